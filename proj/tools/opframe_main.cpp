/*
 * opframe — command line front end.
 *
 * Subcommands: gen, certify, transform, demo, check-theorems. Instances and
 * reports travel as JSON; results go to stdout or --out, human-oriented
 * notes to stderr. Exit codes for certify: 0 frame, 2 Bessel only, 3 not a
 * frame, 4 commutation/GL+ gate failure, 1 malformed input.
 */

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "opframe/json_io.hpp"
#include "opframe/suite.hpp"
#include "opframe/transforms.hpp"

namespace {

using opframe::json;

void emit(const json& j, const std::string& out_path) {
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open output file " + out_path);
    f << text;
}

json read_instance_json(const std::string& path) {
    std::string text;
    if (path.empty() || path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream f(path);
        if (!f) throw std::runtime_error("cannot open " + path);
        std::stringstream ss;
        ss << f.rdbuf();
        text = ss.str();
    }
    return json::parse(text);
}

struct CommonFlags {
    std::uint64_t seed = 42;
    int samples = 200;
    double tol = 1e-9;
    std::string out;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--seed", flags.seed, "random seed");
    cmd->add_option("--samples", flags.samples, "samples per certification")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tol", flags.tol, "certification tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", flags.out, "write JSON result to this file");
}

opframe::CertifyOptions options_of(const CommonFlags& flags) {
    opframe::CertifyOptions opt;
    opt.seed = flags.seed;
    opt.samples = flags.samples;
    opt.tol = flags.tol;
    return opt;
}

int exit_code_of(opframe::Verdict v) {
    switch (v) {
        case opframe::Verdict::controlled_star_frame: return 0;
        case opframe::Verdict::bessel_only: return 2;
        case opframe::Verdict::not_frame: return 3;
    }
    return 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"controlled star operator frame toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate an instance");
    CommonFlags gen_flags;
    std::string kind_name = "scalar_controller";
    opframe::GenSpec spec;
    add_common(gen, gen_flags);
    gen->add_option("--kind", kind_name,
                    "scalar_controller | diagonal | harmonic");
    gen->add_option("--n", spec.n, "algebra size")->check(CLI::PositiveNumber);
    gen->add_option("--m", spec.m, "module rank")->check(CLI::PositiveNumber);
    gen->add_option("--count", spec.count, "family size");
    gen->add_option("--d", spec.d, "harmonic truncation")
        ->check(CLI::PositiveNumber);
    gen->add_option("--alpha", spec.alpha, "harmonic controller scale");

    // certify
    auto* certify = app.add_subcommand("certify", "certify an instance");
    CommonFlags cert_flags;
    std::string cert_path;
    add_common(certify, cert_flags);
    certify->add_option("file", cert_path, "instance JSON (default stdin)");

    // transform
    auto* transform = app.add_subcommand("transform", "apply a transformation");
    CommonFlags tr_flags;
    std::string tr_path;
    std::string tr_kind;
    std::string tr_mode = "assert";
    double tr_alpha = 0.0;
    bool tr_alpha_set = false;
    add_common(transform, tr_flags);
    transform->add_option("file", tr_path, "instance JSON (default stdin)");
    transform
        ->add_option("--transform", tr_kind,
                     "right | left | canonical | c2 | transport")
        ->required();
    transform->add_option("--mode", tr_mode, "assert | report_only");
    transform->add_option("--alpha", tr_alpha,
                          "use theta = alpha * identity instead of a seeded draw")
        ->each([&](const std::string&) { tr_alpha_set = true; });

    // demo
    auto* demo = app.add_subcommand("demo", "reproduce the worked tight instance");
    CommonFlags demo_flags;
    int demo_d = 3;
    double demo_alpha = 2.0;
    add_common(demo, demo_flags);
    demo->add_option("--d", demo_d, "truncation size")->check(CLI::PositiveNumber);
    demo->add_option("--alpha", demo_alpha, "controller scale");

    // check-theorems
    auto* check = app.add_subcommand("check-theorems", "run the property suites");
    CommonFlags check_flags;
    int check_instances = 50;
    add_common(check, check_flags);
    check->add_option("--count", check_instances, "instances per suite")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed()) {
            const auto kind = opframe::instance_kind_from_name(kind_name);
            if (!kind) {
                std::cerr << "unknown kind: " << kind_name << "\n";
                return 1;
            }
            spec.kind = *kind;
            if (spec.count < 1) {
                std::cerr << "count must be >= 1\n";
                return 1;
            }
            const opframe::Instance inst =
                opframe::generate_instance(spec, gen_flags.seed);
            emit(opframe::to_json(inst), gen_flags.out);
            return 0;
        }

        if (certify->parsed()) {
            opframe::Instance inst;
            try {
                inst = opframe::instance_from_json(read_instance_json(cert_path));
            } catch (const std::exception& e) {
                std::cerr << "malformed instance: " << e.what() << "\n";
                return 1;
            }
            try {
                const opframe::CertifyOptions opt = options_of(cert_flags);
                const opframe::FrameCertificate cert =
                    opframe::certify_instance(inst, opt);
                json out = opframe::to_json(cert);
                if (inst.bounds &&
                    cert.verdict == opframe::Verdict::controlled_star_frame) {
                    const auto nc = opframe::certify_norm_characterization(
                        inst.family, *inst.bounds, opt);
                    out["norm_characterization_held"] = nc.held;
                }
                emit(out, cert_flags.out);
                return exit_code_of(cert.verdict);
            } catch (const opframe::gate_error& e) {
                std::cerr << "gate failure: " << e.what() << "\n";
                return 4;
            }
        }

        if (transform->parsed()) {
            opframe::Instance inst;
            try {
                inst = opframe::instance_from_json(read_instance_json(tr_path));
            } catch (const std::exception& e) {
                std::cerr << "malformed instance: " << e.what() << "\n";
                return 1;
            }
            const opframe::CertifyOptions opt = options_of(tr_flags);
            const opframe::TransformMode mode =
                tr_mode == "report_only" ? opframe::TransformMode::report_only
                                         : opframe::TransformMode::assert_mode;
            const opframe::AlgebraDescriptor d = inst.family.descriptor();
            const int m = inst.family.rank();

            try {
                if (tr_kind == "right" || tr_kind == "left") {
                    opframe::ModuleOperator theta =
                        opframe::identity_operator(d, m);
                    if (tr_alpha_set) {
                        theta = opframe::scalar_operator(d, m, tr_alpha);
                    } else {
                        opframe::Rng rng(opframe::sub_seed(tr_flags.seed, 0x7147));
                        theta = d.kind == opframe::AlgebraKind::diagonal
                                    ? opframe::random_unitary_operator(d, m, rng)
                                    : opframe::random_invertible_operator(d, m,
                                                                          rng);
                    }
                    const opframe::TransformResult res =
                        tr_kind == "right"
                            ? opframe::compose_right(inst.family, theta,
                                                     inst.bounds, opt)
                            : opframe::compose_left(inst.family, theta, mode,
                                                    inst.bounds, opt);
                    emit(opframe::to_json(res.report), tr_flags.out);
                    if (res.report.mode == opframe::TransformMode::assert_mode &&
                        !res.report.held)
                        return 2;
                    return 0;
                }
                if (tr_kind == "canonical") {
                    const opframe::TransformResult res =
                        opframe::canonical_rescale(inst.family, inst.bounds, opt);
                    emit(opframe::to_json(res.report), tr_flags.out);
                    return res.report.held ? 0 : 2;
                }
                if (tr_kind == "c2") {
                    const auto sc_c = opframe::optimal_scalar_bounds(
                        {inst.family.ops, inst.family.C, inst.family.C});
                    const auto sc_p = opframe::optimal_scalar_bounds(
                        {inst.family.ops, opframe::identity_operator(d, m),
                         opframe::identity_operator(d, m)});
                    const auto pair_c = opframe::promote_scalar_to_star(
                        d, sc_c.first, sc_c.second);
                    const auto pair_p = opframe::promote_scalar_to_star(
                        d, sc_p.first, sc_p.second);
                    const auto to_plain = opframe::c2_equivalence(
                        inst.family.ops, inst.family.C,
                        opframe::C2Direction::controlled_to_plain, pair_c, opt);
                    const auto to_controlled = opframe::c2_equivalence(
                        inst.family.ops, inst.family.C,
                        opframe::C2Direction::plain_to_controlled, pair_p, opt);
                    json out = {{"controlled_to_plain", opframe::to_json(to_plain)},
                                {"plain_to_controlled",
                                 opframe::to_json(to_controlled)}};
                    emit(out, tr_flags.out);
                    return (to_plain.held && to_controlled.held) ? 0 : 2;
                }
                if (tr_kind == "transport") {
                    if (!inst.bounds) {
                        const auto sc =
                            opframe::optimal_scalar_bounds(inst.family);
                        inst.bounds = opframe::promote_scalar_to_star(
                            d, sc.first, sc.second);
                    }
                    opframe::Rng rng(opframe::sub_seed(tr_flags.seed, 0x7a7a));
                    const opframe::AlgebraElement u =
                        opframe::random_unitary(d, rng);
                    const opframe::TransportReport rep =
                        opframe::homomorphism_transport(inst.family, u,
                                                        *inst.bounds, opt);
                    emit(opframe::to_json(rep), tr_flags.out);
                    return rep.held ? 0 : 2;
                }
                std::cerr << "unknown transform: " << tr_kind << "\n";
                return 1;
            } catch (const opframe::gate_error& e) {
                std::cerr << "gate failure: " << e.what() << "\n";
                return 4;
            }
        }

        if (demo->parsed()) {
            if (demo_alpha == 0.0) {
                std::cerr << "alpha must be nonzero\n";
                return 1;
            }
            const opframe::OperatorFamily family =
                opframe::make_harmonic_family(demo_d, demo_alpha);
            const opframe::AlgebraElement bound =
                opframe::harmonic_bound_element(demo_d);
            const opframe::ModuleOperator s = opframe::frame_operator(family);
            const opframe::CertifyOptions opt = options_of(demo_flags);
            const opframe::FrameCertificate cert =
                opframe::certify_star_bounds(family, {bound, bound}, opt);

            std::cerr << "frame operator diagonal:";
            for (int j = 0; j < demo_d; ++j)
                std::cerr << " " << s.at(0, 0).at(j, j).real();
            std::cerr << "\nbound element diagonal:  ";
            for (int j = 0; j < demo_d; ++j)
                std::cerr << " " << bound.at(j, j).real();
            std::cerr << "\nverdict: " << opframe::verdict_name(cert.verdict)
                      << (cert.tight ? " (tight)" : "") << "\n";

            double sweep = 0.0;
            for (double a : {0.5, 1.0, 2.0, 10.0}) {
                const opframe::ModuleOperator s_a = opframe::frame_operator(
                    opframe::make_harmonic_family(demo_d, a));
                sweep = std::max(sweep, opframe::operator_norm(
                                            opframe::sub(s_a, s)));
            }
            std::cerr << "alpha sweep residual: " << sweep << "\n";

            json out = {{"d", demo_d},
                        {"alpha", demo_alpha},
                        {"frame_operator", opframe::to_json(s)},
                        {"bound_element", opframe::to_json(bound)},
                        {"alpha_sweep_residual", sweep},
                        {"certificate", opframe::to_json(cert)}};
            emit(out, demo_flags.out);
            return 0;
        }

        if (check->parsed()) {
            opframe::SuiteConfig cfg;
            cfg.seed = check_flags.seed;
            cfg.samples = check_flags.samples;
            cfg.tol = check_flags.tol;
            cfg.instances = check_instances;
            const auto results = opframe::run_all_suites(cfg);
            bool all = true;
            json suites = json::array();
            for (const auto& r : results) {
                all = all && r.ok();
                json j = {{"name", r.name},
                          {"total", r.total},
                          {"passed", r.passed},
                          {"worst_residual", r.worst_residual},
                          {"ok", r.ok()}};
                if (!r.note.empty()) j["note"] = r.note;
                suites.push_back(std::move(j));
                std::cerr << (r.ok() ? "PASS " : "FAIL ") << r.name << " "
                          << r.passed << "/" << r.total << "\n";
            }
            json out = {{"seed", cfg.seed},
                        {"instances", cfg.instances},
                        {"samples", cfg.samples},
                        {"suites", std::move(suites)},
                        {"all_passed", all}};
            emit(out, check_flags.out);
            return all ? 0 : 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
