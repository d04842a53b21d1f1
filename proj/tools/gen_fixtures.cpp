// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

// Regenerates everything under fixtures/. The shipped files are frozen
// copies of this tool's output; the test suite rebuilds them in a scratch
// directory and fails if a single byte drifted.

#include "sharesim/audit.hpp"
#include "sharesim/audit_fixtures.hpp"
#include "sharesim/report.hpp"
#include "sharesim/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

namespace
{

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
    {
        std::cerr << "cannot write " << path << "\n";
        std::exit(1);
    }
    out << text;
    std::cout << "wrote " << path.string() << "\n";
}

} // namespace

int main(int argc, char** argv)
{
    std::filesystem::path root = argc > 1 ? argv[1] : "fixtures";
    std::filesystem::create_directories(root / "audit");
    std::filesystem::create_directories(root / "golden");

    using namespace sharesim;

    write_file(root / "audit" / "wuala_like.json",
               canonical_dump(deployment_to_json(make_wuala_like_deployment().desc)));
    write_file(root / "audit" / "spideroak_like.json",
               canonical_dump(
                   deployment_to_json(make_spideroak_like_deployment().desc)));
    write_file(root / "audit" / "tresorit_like.json",
               canonical_dump(
                   deployment_to_json(make_tresorit_like_deployment().desc)));
    write_file(root / "audit" / "third_party_only.json",
               canonical_dump(
                   deployment_to_json(make_third_party_only_deployment().desc)));

    for (std::uint64_t seed : {42ULL, 43ULL, 44ULL})
    {
        Scenario sc = make_scenario(SharingKind::PrivateFolder,
                                    PolicyKind::TrustServerDirectory,
                                    ServerMode::MaliciousMitm, seed);
        RunResult rr = run_attack_scenario(sc);
        write_file(root / "golden" /
                       ("attack-private-folder-mitm-seed" + std::to_string(seed) +
                        ".json"),
                   canonical_dump(attack_report_json(sc, rr)));
    }

    MatrixReport matrix = run_matrix(42);
    write_file(root / "golden" / "matrix-seed42.json",
               canonical_dump(matrix_report_json(matrix)));

    return 0;
}
