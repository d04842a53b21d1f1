// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

// The files under fixtures/ are frozen outputs: regenerating them from the
// current code must reproduce every byte. A mismatch means either the code
// drifted (fix the code or refreeze deliberately) or determinism broke.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sharesim/audit.hpp"
#include "sharesim/audit_fixtures.hpp"
#include "sharesim/error.hpp"
#include "sharesim/report.hpp"
#include "sharesim/scenario.hpp"

#include <fstream>
#include <sstream>
#include <string>

using namespace sharesim;

namespace
{

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing fixture file: ", path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

const std::string k_dir = SHARESIM_FIXTURE_DIR;

} // namespace

TEST_CASE("audit fixtures regenerate byte for byte")
{
    CHECK(slurp(k_dir + "/audit/wuala_like.json") ==
          canonical_dump(deployment_to_json(make_wuala_like_deployment().desc)));
    CHECK(slurp(k_dir + "/audit/spideroak_like.json") ==
          canonical_dump(
              deployment_to_json(make_spideroak_like_deployment().desc)));
    CHECK(slurp(k_dir + "/audit/tresorit_like.json") ==
          canonical_dump(
              deployment_to_json(make_tresorit_like_deployment().desc)));
    CHECK(slurp(k_dir + "/audit/third_party_only.json") ==
          canonical_dump(
              deployment_to_json(make_third_party_only_deployment().desc)));
}

TEST_CASE("audit fixtures load back and classify as shipped")
{
    struct Expect
    {
        const char* file;
        DeploymentClass cls;
    };
    const Expect table[] = {
        {"wuala_like.json", DeploymentClass::ProviderAsRootCA},
        {"spideroak_like.json", DeploymentClass::ProviderAsRootCA},
        {"tresorit_like.json", DeploymentClass::ProviderAsIntermediateCA},
        {"third_party_only.json", DeploymentClass::ThirdPartyOnly},
    };
    for (const Expect& e : table)
    {
        CAPTURE(e.file);
        DeploymentDescriptor dep =
            load_deployment(k_dir + "/audit/" + e.file);
        CHECK(audit_deployment(dep).classification == e.cls);
    }
}

TEST_CASE("golden attack reports regenerate byte for byte")
{
    for (std::uint64_t seed : {42ULL, 43ULL, 44ULL})
    {
        CAPTURE(seed);
        Scenario sc = make_scenario(SharingKind::PrivateFolder,
                                    PolicyKind::TrustServerDirectory,
                                    ServerMode::MaliciousMitm, seed);
        RunResult rr = run_attack_scenario(sc);
        CHECK(slurp(k_dir + "/golden/attack-private-folder-mitm-seed" +
                    std::to_string(seed) + ".json") ==
              canonical_dump(attack_report_json(sc, rr)));
    }
}

TEST_CASE("golden matrix report regenerates byte for byte")
{
    MatrixReport report = run_matrix(42);
    CHECK(slurp(k_dir + "/golden/matrix-seed42.json") ==
          canonical_dump(matrix_report_json(report)));
}
