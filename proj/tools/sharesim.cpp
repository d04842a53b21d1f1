// Copyright 2026 the sharesim authors. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

// Command line front end: run a single sharing exchange against an honest or
// malicious provider, sweep the whole kind/policy matrix, or audit a trust
// deployment description.

#include "sharesim/audit.hpp"
#include "sharesim/error.hpp"
#include "sharesim/report.hpp"
#include "sharesim/scenario.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

namespace
{

constexpr int k_exit_ok = 0;
constexpr int k_exit_breach = 1;
constexpr int k_exit_config = 2;

void write_output(const std::string& path, const std::string& text)
{
    if (path.empty())
    {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw sharesim::SimError(sharesim::Err::ConfigError,
                                 "cannot open output file " + path);
    out << text;
}

int run_attack(const sharesim::Scenario& sc, const std::string& format,
               const std::string& output)
{
    sharesim::RunResult rr = sharesim::run_attack_scenario(sc);
    if (format == "json")
        write_output(output, sharesim::canonical_dump(
                                 sharesim::attack_report_json(sc, rr)));
    else
        write_output(output, sharesim::attack_report_text(sc, rr));
    return rr.outcome.kind == sharesim::OutcomeKind::BreachUndetected
               ? k_exit_breach
               : k_exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"deterministic simulator of key substitution attacks on "
                 "client side encrypted sharing"};
    app.require_subcommand(1);

    std::string format = "text";
    std::string output;

    // attack ----------------------------------------------------------------
    CLI::App* attack = app.add_subcommand(
        "attack", "run one sharing exchange and report the outcome");
    std::string kind_name = "private-folder";
    std::string policy_name = "trust-server-directory";
    std::string mode_name = "honest";
    std::string scope_name = "full";
    std::string config_path;
    std::uint64_t seed = 42;
    unsigned key_bits = sharesim::k_toy_key_bits;
    attack->add_option("--kind", kind_name,
                       "sharing feature: public-web-link, private-web-link, "
                       "public-folder, private-folder, public-group, "
                       "private-group");
    attack->add_option("--policy", policy_name,
                       "recipient key verification policy: "
                       "trust-server-directory, chain-to-external-root, "
                       "pinned-fingerprint, invitation-secret");
    attack->add_option("--mode", mode_name,
                       "provider behaviour: honest or malicious-mitm (alias "
                       "mitm)");
    attack->add_option("--seed", seed, "deterministic seed")
        ->capture_default_str();
    attack->add_option("--mitm-scope", scope_name,
                       "which attack stages the malicious provider performs: "
                       "full, lookup-only, delivery-only");
    attack->add_option("--key-bits", key_bits,
                       "RSA modulus size, 512 (fast) or 2048")
        ->capture_default_str();
    CLI::Option* config_opt =
        attack->add_option("--config", config_path,
                           "JSON scenario file; exclusive with the per-field "
                           "flags above");
    attack->add_option("--format", format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    attack->add_option("--output", output, "write the report here instead of stdout");
    for (const char* flag : {"--kind", "--policy", "--mode", "--seed",
                             "--mitm-scope", "--key-bits"})
        config_opt->excludes(flag);

    // matrix ----------------------------------------------------------------
    CLI::App* matrix = app.add_subcommand(
        "matrix", "sweep every sharing kind x policy x provider mode cell");
    std::uint64_t matrix_seed = 42;
    matrix->add_option("--seed", matrix_seed, "deterministic seed")
        ->capture_default_str();
    matrix->add_option("--format", format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    matrix->add_option("--output", output, "write the report here instead of stdout");

    // audit -----------------------------------------------------------------
    CLI::App* audit = app.add_subcommand(
        "audit", "classify who controls the roots of a trust deployment");
    std::string deployment_path;
    audit
        ->add_option("--deployment", deployment_path,
                     "deployment description JSON file")
        ->required();
    audit->add_option("--format", format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    audit->add_option("--output", output, "write the report here instead of stdout");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        int code = app.exit(e);
        return code == 0 ? k_exit_ok : k_exit_config;
    }

    try
    {
        if (attack->parsed())
        {
            if (!config_path.empty())
                return run_attack(sharesim::load_scenario_file(config_path),
                                  format, output);

            auto kind = sharesim::sharing_kind_from_name(kind_name);
            if (!kind)
                throw sharesim::SimError(sharesim::Err::ConfigError,
                                         "unknown sharing kind " + kind_name);
            auto policy = sharesim::policy_kind_from_name(policy_name);
            if (!policy)
                throw sharesim::SimError(sharesim::Err::ConfigError,
                                         "unknown policy " + policy_name);
            auto mode = sharesim::server_mode_from_name(mode_name);
            if (!mode)
                throw sharesim::SimError(sharesim::Err::ConfigError,
                                         "unknown mode " + mode_name);
            auto scope = sharesim::mitm_scope_from_name(scope_name);
            if (!scope)
                throw sharesim::SimError(sharesim::Err::ConfigError,
                                         "unknown mitm scope " + scope_name);
            sharesim::Scenario sc = sharesim::make_scenario(
                *kind, *policy, *mode, seed, key_bits, *scope);
            return run_attack(sc, format, output);
        }

        if (matrix->parsed())
        {
            sharesim::MatrixReport report = sharesim::run_matrix(matrix_seed);
            if (format == "json")
                write_output(output, sharesim::canonical_dump(
                                         sharesim::matrix_report_json(report)));
            else
                write_output(output, sharesim::matrix_report_text(report));
            return k_exit_ok;
        }

        if (audit->parsed())
        {
            sharesim::DeploymentDescriptor desc =
                sharesim::load_deployment(deployment_path);
            sharesim::AuditFinding finding = sharesim::audit_deployment(desc);
            if (format == "json")
                write_output(output,
                             sharesim::canonical_dump(
                                 sharesim::audit_report_json(desc, finding)));
            else
                write_output(output, sharesim::audit_report_text(desc, finding));
            return k_exit_ok;
        }
    }
    catch (const sharesim::SimError& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return k_exit_config;
    }
    catch (const std::exception& e)
    {
        std::cerr << "internal error: " << e.what() << "\n";
        return k_exit_config;
    }

    return k_exit_config;
}
