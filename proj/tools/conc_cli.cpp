// Command-line front end: constants reproduction, peaking construction,
// end-to-end concentration runs, grid-ratio scans, randomized trials, and
// the L^2 gap bound sweep. Reports are JSON (schema_version 1); scans and
// sample series are CSV with a header row.

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "conc/constants.hpp"
#include "conc/constructions.hpp"
#include "conc/grids.hpp"
#include "conc/json_io.hpp"
#include "conc/pipeline.hpp"

namespace {

using conc::Frequency;
using nlohmann::json;

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw conc::Error(conc::ErrorCode::InvalidArgument, "cannot open " + path);
    out << text << "\n";
}

void write_json(const std::string& path, const json& j) { write_text(path, j.dump(2)); }

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw conc::Error(conc::ErrorCode::InvalidArgument, "cannot open " + path);
    json j;
    in >> j;
    return j;
}

int run_constants(const std::string& out, double tol) {
    conc::SeriesSpec spec;
    if (tol > 0.0) spec.tail_tol = tol;
    const double minimize_tol = tol > 0.0 ? tol : 1e-9;
    const double c2 = conc::c2_constant();
    const conc::MinimizerResult a2 =
        conc::minimize_scalar(conc::SeriesKind::A, 2.0, minimize_tol, spec);
    const conc::C4Bound c4 = conc::c4_lower();
    const double beta = conc::theta_beta(0.225);
    json j{{"schema_version", 1},
           {"kind", "constants"},
           {"c2", c2},
           {"two_c2", 2.0 * c2},
           {"min_A2", json{{"t", a2.argmin}, {"value", a2.value}, {"inverse", 1.0 / a2.value}}},
           {"c4_lower", json{{"t", c4.t_star}, {"bound", c4.bound}}},
           {"beta_0225", beta},
           {"two_over_beta", 2.0 / beta}};
    write_json(out, j);
    return 0;
}

void emit_samples(const conc::ConcentrationReport& rep, const std::string& path, double p,
                  long samples) {
    constexpr long kRowCap = 10'000'000;
    const bool truncated = samples > kRowCap;
    const long n = truncated ? kRowCap : samples;
    std::ofstream out(path);
    if (!out) throw conc::Error(conc::ErrorCode::InvalidArgument, "cannot open " + path);
    out << "x,abs_p\n";
    out.precision(17);
    for (long i = 0; i < n; ++i) {
        const double x = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        const double v = std::pow(std::norm(rep.polynomial.evaluate(x)), 0.5 * p);
        out << x << "," << v << "\n";
    }
    if (truncated) out << "# truncated=true requested=" << samples << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"idempotent L^p concentration toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // lets --out follow the subcommand

    std::string out_path;
    app.add_option("--out", out_path, "output file ('-' = stdout)")->capture_default_str();
    double tol = 0.0;
    app.add_option("--tol", tol, "tolerance override for series/minimizer work");

    // constants
    auto* cmd_constants = app.add_subcommand("constants", "reproduce the scalar constants table");

    // peak
    auto* cmd_peak = app.add_subcommand("peak", "build a gap-peaking idempotent");
    std::string peak_at = "zero";
    double peak_p = 4.0, peak_eps = 0.4, peak_delta = 0.2;
    Frequency peak_gap = 0;
    cmd_peak->add_option("--a", peak_at, "peak location: zero|half")->capture_default_str();
    cmd_peak->add_option("--p", peak_p, "exponent")->required();
    cmd_peak->add_option("--epsilon", peak_eps, "mass deficit budget")->capture_default_str();
    cmd_peak->add_option("--delta", peak_delta, "peak half-width")->capture_default_str();
    cmd_peak->add_option("--gap", peak_gap, "required spectral gap")->capture_default_str();

    // concentrate
    auto* cmd_conc = app.add_subcommand("concentrate", "full concentration pipeline");
    std::string set_path, samples_path;
    long samples_n = 65536;
    bool include_coeffs = false;
    conc::PipelineConfig cfg;
    cmd_conc->add_option("--set", set_path, "interval-union JSON file")->required();
    cmd_conc->add_option("--p", cfg.p, "exponent")->required();
    cmd_conc->add_option("--target", cfg.target_c, "target ratio")->capture_default_str();
    cmd_conc->add_option("--gap", cfg.gap_N, "required spectral gap")->capture_default_str();
    cmd_conc->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    cmd_conc->add_option("--epsilon", cfg.epsilon, "peak mass deficit")->capture_default_str();
    cmd_conc->add_option("--delta", cfg.delta, "peak half-width cap")->capture_default_str();
    cmd_conc->add_option("--theta", cfg.theta, "diophantine quality")->capture_default_str();
    cmd_conc->add_option("--eta", cfg.eta, "density slack")->capture_default_str();
    cmd_conc->add_option("--q-min", cfg.q_min, "smallest grid size")->capture_default_str();
    cmd_conc->add_option("--q-max", cfg.q_max, "largest grid size")->capture_default_str();
    cmd_conc->add_option("--riesz-J", cfg.riesz_J, "force the Riesz depth");
    cmd_conc->add_option("--riesz-R", cfg.riesz_R, "force the Riesz base");
    cmd_conc->add_option("--dirichlet-L", cfg.dirichlet_L, "witness power (2 = paired)");
    cmd_conc->add_option("--emit-samples", samples_path, "CSV of (x, |S(x)|^p)");
    cmd_conc->add_option("--samples", samples_n, "sample count for --emit-samples")
        ->capture_default_str();
    cmd_conc->add_flag("--include-coeffs", include_coeffs, "embed the witness spectrum");

    // grid-scan
    auto* cmd_scan = app.add_subcommand("grid-scan", "ratio vs predicted limit sweep");
    std::vector<Frequency> scan_q{101, 401};
    std::vector<int> scan_L{1, 2};
    double scan_p = 4.0;
    bool scan_json = false, scan_csv = false;
    cmd_scan->add_option("--q", scan_q, "grid sizes")->capture_default_str();
    cmd_scan->add_option("--L", scan_L, "Dirichlet powers")->capture_default_str();
    cmd_scan->add_option("--p", scan_p, "exponent")->capture_default_str();
    cmd_scan->add_flag("--json", scan_json, "emit rows as JSON");
    cmd_scan->add_flag("--csv", scan_csv, "emit CSV (default)");

    // random
    auto* cmd_rand = app.add_subcommand("random", "randomized concentration trials");
    Frequency rand_q = 401, rand_r = 100;
    int rand_L = 2;
    double rand_p = 4.0, rand_kfactor = 0.8;
    long rand_trials = 200;
    std::uint64_t rand_seed = 7;
    cmd_rand->add_option("--q", rand_q)->capture_default_str();
    cmd_rand->add_option("--r", rand_r)->capture_default_str();
    cmd_rand->add_option("--L", rand_L)->capture_default_str();
    cmd_rand->add_option("--p", rand_p)->capture_default_str();
    cmd_rand->add_option("--k-factor", rand_kfactor, "target = factor * base ratio")
        ->capture_default_str();
    cmd_rand->add_option("--trials", rand_trials)->capture_default_str();
    cmd_rand->add_option("--seed", rand_seed)->capture_default_str();

    // l2gap
    auto* cmd_l2 = app.add_subcommand("l2gap", "L^2 gap bound sweep");
    double l2_halfwidth = 0.01;
    Frequency l2_r = 3;
    std::vector<Frequency> l2_dilations{10, 100, 1000};
    cmd_l2->add_option("--halfwidth", l2_halfwidth)->capture_default_str();
    cmd_l2->add_option("--r", l2_r, "Dirichlet kernel size")->capture_default_str();
    cmd_l2->add_option("--dilations", l2_dilations)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        (void)app.exit(e);
        return 64;  // usage error
    }

    try {
        if (*cmd_constants) return run_constants(out_path, tol);

        if (*cmd_peak) {
            double a;
            if (peak_at == "zero")
                a = 0.0;
            else if (peak_at == "half")
                a = 0.5;
            else
                throw conc::Error(conc::ErrorCode::InvalidArgument, "--a must be zero or half");
            const conc::PeakResult pk =
                conc::build_peaking_idempotent(a, peak_p, peak_eps, peak_delta, peak_gap);
            json j{{"schema_version", 1},
                   {"kind", "peak"},
                   {"a", a},
                   {"p", peak_p},
                   {"epsilon", peak_eps},
                   {"delta", peak_delta},
                   {"gap_N", peak_gap},
                   {"peak_mass", pk.peak_mass},
                   {"riesz_J", pk.depth_J},
                   {"riesz_R", pk.riesz_base_R},
                   {"polynomial",
                    json{{"spectrum_size", pk.T.spectrum_size()},
                         {"degree", pk.T.degree()},
                         {"min_gap", pk.T.min_gap()}}}};
            write_json(out_path, j);
            return 0;
        }

        if (*cmd_conc) {
            const conc::IntervalUnion E = conc::intervals_from_json(load_json(set_path));
            const conc::ConcentrationReport rep = conc::concentrate(E, cfg);
            write_json(out_path, conc::to_json(rep, include_coeffs));
            if (!samples_path.empty()) emit_samples(rep, samples_path, cfg.p, samples_n);
            return 0;
        }

        if (*cmd_scan) {
            if (scan_json && scan_csv)
                throw conc::Error(conc::ErrorCode::InvalidArgument,
                                  "choose one of --json / --csv");
            json rows = json::array();
            std::ostringstream csv;
            csv.precision(17);
            csv << "q,r,L,p,star,ratio,predicted_limit\n";
            conc::SeriesSpec sspec;
            if (tol > 0.0) sspec.tail_tol = tol;
            for (const bool star : {false, true}) {
                for (const int L : scan_L) {
                    const double lambda = static_cast<double>(L) * scan_p;
                    const conc::MinimizerResult ts = conc::minimize_scalar(
                        star ? conc::SeriesKind::A : conc::SeriesKind::B, lambda,
                        tol > 0.0 ? tol : 1e-7, sspec);
                    for (const Frequency q : scan_q) {
                        // the star grid sees D_r at odd multiples of 1/(2q):
                        // its limit variable is r/(2q), the plain grid's r/q
                        const double scale = star ? 2.0 : 1.0;
                        const auto r = std::clamp<Frequency>(
                            static_cast<Frequency>(std::llround(
                                ts.argmin * scale * static_cast<double>(q))),
                            1, q - 1);
                        const conc::SparseTrigPoly R =
                            conc::dirichlet_grid_product(r, q, L, star);
                        const double t = static_cast<double>(r) /
                                         (scale * static_cast<double>(q));
                        const double predicted =
                            star ? 1.0 / (2.0 * conc::A_series(lambda, t, sspec))
                                 : 1.0 / conc::B_series(lambda, t, sspec);
                        const conc::ConcentrationRatio cr =
                            conc::grid_ratio(R, scan_p, q, 1, star);
                        csv << q << "," << r << "," << L << "," << scan_p << ","
                            << (star ? 1 : 0) << "," << cr.ratio << "," << predicted << "\n";
                        rows.push_back(json{{"q", q},
                                            {"r", r},
                                            {"L", L},
                                            {"p", scan_p},
                                            {"star", star},
                                            {"ratio", cr.ratio},
                                            {"predicted_limit", predicted}});
                    }
                }
            }
            if (scan_json)
                write_json(out_path, json{{"schema_version", 1},
                                          {"kind", "grid_scan"},
                                          {"rows", std::move(rows)}});
            else
                write_text(out_path, csv.str());
            return 0;
        }

        if (*cmd_rand) {
            const double base = conc::base_concentration_ratio(rand_q, rand_r, rand_L, rand_p);
            const double k_target = rand_kfactor * base;
            const conc::RandomTrialRecord rec = conc::random_concentration_trial(
                rand_q, rand_r, rand_L, rand_p, k_target, rand_trials, rand_seed);
            json j{{"schema_version", 1},
                   {"kind", "random_trials"},
                   {"q", rand_q},
                   {"r", rand_r},
                   {"L", rand_L},
                   {"p", rand_p},
                   {"k_target", k_target},
                   {"trials", rec.trials},
                   {"seed", rand_seed},
                   {"successes", rec.successes},
                   {"best_ratio", rec.best_ratio},
                   {"base_ratio", rec.base_ratio}};
            write_json(out_path, j);
            return 0;
        }

        if (*cmd_l2) {
            json rows = json::array();
            Frequency threshold = 0;
            for (const Frequency M : l2_dilations) {
                const conc::SparseTrigPoly f = conc::dilate(conc::dirichlet(l2_r), M);
                const conc::L2GapRecord rec = conc::l2_gap_bound(l2_halfwidth, f, M);
                rows.push_back(json{{"dilation", M},
                                    {"gap", M},
                                    {"measured_ratio", rec.measured_ratio},
                                    {"bound", rec.bound}});
                if (threshold == 0 && rec.measured_ratio < 0.05) threshold = M;
            }
            json j{{"schema_version", 1},
                   {"kind", "l2_gap_sweep"},
                   {"halfwidth", l2_halfwidth},
                   {"r", l2_r},
                   {"rows", std::move(rows)},
                   {"threshold_dilation", threshold}};
            write_json(out_path, j);
            return 0;
        }
    } catch (const conc::TargetUnreachableError& e) {
        json j = conc::error_json(e);
        j["best_report"] = conc::to_json(e.best_report());
        write_json(out_path, j);
        return 2;
    } catch (const conc::Error& e) {
        switch (e.code()) {
            case conc::ErrorCode::IllegalRegime:
            case conc::ErrorCode::NotFound:
            case conc::ErrorCode::TargetUnreachable:
            case conc::ErrorCode::NotCoprime:
            case conc::ErrorCode::ZeroGridSum:
            case conc::ErrorCode::GapViolation:
            case conc::ErrorCode::RationalInput:
            case conc::ErrorCode::InvalidArgument:
                write_json(out_path, conc::error_json(e));
                return 2;
            default:
                std::cerr << e.what() << "\n";
                return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
