// qid — command-line front end: analyze lattice distributions for
// quasi-infinite divisibility, extract triplets, and evaluate the derived
// quantities (Katti recursion, DPCP check, moments, Laplace transform,
// Cuppens series, root-shift approximation, convergence diagnostics,
// synthesis of masses from a triplet).
//
// Exit codes: 0 success, 1 input error, 2 NotQID/FAIL verdicts, 3 Undecided.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "qid/analysis.hpp"
#include "qid/cuppens.hpp"
#include "qid/json_io.hpp"
#include "qid/lattice_qid.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitFail = 2;
constexpr int kExitUndecided = 3;

struct OutputOptions {
    std::string format = "json";
    bool quiet = false;
};

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json j;
    in >> j;
    return j;
}

qid::LatticeDistribution load_dist(const std::string& path) {
    return load_json(path).get<qid::LatticeDistribution>();
}

qid::CharacteristicTriplet load_triplet(const std::string& path) {
    return load_json(path).get<qid::CharacteristicTriplet>();
}

void print_kv(const std::string& key, const std::string& value) {
    std::cout << std::left << std::setw(18) << key << value << "\n";
}

void print_number_kv(const std::string& key, double value) {
    std::ostringstream os;
    os << std::setprecision(12) << value;
    print_kv(key, os.str());
}

// Fixed-width atom table, one atom per row, 12 significant digits.
void print_atoms(const qid::SignedMeasure& m) {
    std::cout << std::setw(22) << "location" << std::setw(22) << "weight" << "\n";
    for (const auto& [x, w] : m.atoms())
        std::cout << std::setw(22) << std::setprecision(12) << x << std::setw(22) << std::setprecision(12)
                  << w << "\n";
}

void emit(const json& j, const OutputOptions& out, const std::function<void()>& table_printer) {
    if (out.quiet) return;
    if (out.format == "json")
        std::cout << j.dump(2) << "\n";
    else
        table_printer();
}

int verdict_exit(const qid::QidResult& r) {
    switch (r.verdict) {
        case qid::Verdict::Qid: return kExitOk;
        case qid::Verdict::NotQid: return kExitFail;
        case qid::Verdict::Undecided: return kExitUndecided;
    }
    return kExitInputError;
}

void print_result_table(const qid::QidResult& r) {
    print_kv("verdict", qid::to_string(r.verdict));
    print_kv("method", qid::to_string(r.method));
    if (!r.reason.empty()) print_kv("reason", r.reason);
    if (r.triplet) {
        print_number_kv("a", r.triplet->a);
        print_number_kv("gamma", r.triplet->gamma);
        print_kv("kind", qid::to_string(r.triplet->kind));
        print_number_kv("tail_bound", r.tail_bound);
        std::cout << "quasi-Levy atoms:\n";
        print_atoms(r.triplet->nu);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quasi-infinite divisibility of lattice distributions"};
    app.require_subcommand(1);

    OutputOptions out;
    app.add_option("--format", out.format, "output format")->check(CLI::IsMember({"json", "table"}));
    app.add_flag("--quiet", out.quiet, "suppress normal output, keep exit codes");

    // analyze
    auto* analyze_cmd = app.add_subcommand("analyze", "decide QID and extract the triplet");
    std::string analyze_file, method = "auto";
    double trunc_tol = 1e-9, circle_tol = qid::kDefaultCircleTol;
    analyze_cmd->add_option("dist", analyze_file, "distribution JSON")->required();
    analyze_cmd->add_option("--method", method)->check(CLI::IsMember({"auto", "root", "fft"}));
    analyze_cmd->add_option("--trunc-tol", trunc_tol, "series/coefficient truncation tolerance");
    analyze_cmd->add_option("--circle-tol", circle_tol, "unit-circle classification tolerance");

    // katti
    auto* katti_cmd = app.add_subcommand("katti", "Katti/Panjer recursion for the quasi-Levy atoms");
    std::string katti_file;
    std::size_t max_n = 50;
    katti_cmd->add_option("dist", katti_file)->required();
    katti_cmd->add_option("--max-n", max_n);

    // dpcp
    auto* dpcp_cmd = app.add_subcommand("dpcp", "discrete pseudo-compound Poisson check");
    std::string dpcp_file;
    dpcp_cmd->add_option("dist", dpcp_file)->required();

    // moments
    auto* moments_cmd = app.add_subcommand("moments", "mean/variance (and exp moment) from a triplet");
    std::string moments_file;
    double alpha = 0.0;
    bool alpha_set = false;
    moments_cmd->add_option("triplet", moments_file)->required();
    moments_cmd->add_option("--alpha", alpha)->each([&](const std::string&) { alpha_set = true; });

    // laplace
    auto* laplace_cmd = app.add_subcommand("laplace", "Laplace transform values from a triplet");
    std::string laplace_file;
    std::vector<double> u_values;
    laplace_cmd->add_option("triplet", laplace_file)->required();
    laplace_cmd->add_option("--u", u_values, "evaluation points (u >= 0)")->required()->expected(-1);

    // cuppens
    auto* cuppens_cmd = app.add_subcommand("cuppens", "dominant-atom series triplet");
    std::string cuppens_file;
    double tail_tol = 1e-9;
    cuppens_cmd->add_option("dist", cuppens_file)->required();
    cuppens_cmd->add_option("--tail-tol", tail_tol);

    // approximate
    auto* approx_cmd = app.add_subcommand("approximate", "root-shifted QID approximation");
    approx_cmd->set_help_flag("--help", "print help");  // frees -h for the shift option
    std::string approx_file;
    double h = 0.0;
    approx_cmd->add_option("dist", approx_file)->required();
    approx_cmd->add_option("--h", h, "root shift")->required();

    // converge
    auto* converge_cmd = app.add_subcommand("converge", "l1 convergence diagnostics for a family");
    std::string converge_dir, converge_target;
    double l1_threshold = 0.5;
    converge_cmd->add_option("dir", converge_dir, "directory of distribution JSON files")->required();
    converge_cmd->add_option("--target", converge_target)->required();
    converge_cmd->add_option("--threshold", l1_threshold);

    // validate-triplet
    auto* validate_cmd = app.add_subcommand("validate-triplet", "necessary-condition checks");
    std::string validate_file;
    validate_cmd->add_option("triplet", validate_file)->required();

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "exp(Psi) samples and reconstructed masses");
    std::string synth_file;
    std::size_t grid = 0;
    synth_cmd->add_option("triplet", synth_file)->required();
    synth_cmd->add_option("--grid", grid, "grid size (power of two)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (*analyze_cmd) {
            qid::AnalyzeOptions opts;
            opts.circle_tol = circle_tol;
            if (method == "root") opts.method = qid::AnalysisMethod::Root;
            if (method == "fft") opts.method = qid::AnalysisMethod::Fourier;
            opts.trunc_tol = trunc_tol;
            opts.fourier_drop_tol = std::min(trunc_tol, 1e-12);
            const qid::QidResult res = qid::analyze(load_dist(analyze_file), opts);
            emit(json(res), out, [&] { print_result_table(res); });
            return verdict_exit(res);
        }
        if (*katti_cmd) {
            const qid::KattiResult res = qid::katti_extract(load_dist(katti_file), max_n);
            emit(json(res), out, [&] {
                print_kv("min_index", std::to_string(res.min_index));
                std::cout << std::setw(22) << "n" << std::setw(22) << "q_n" << "\n";
                for (std::size_t n = 0; n < res.q.size(); ++n)
                    std::cout << std::setw(22) << n + 1 << std::setw(22) << std::setprecision(12)
                              << res.q[n] << "\n";
            });
            return kExitOk;
        }
        if (*dpcp_cmd) {
            const qid::DpcpResult res = qid::dpcp_check(load_dist(dpcp_file));
            emit(json(res), out, [&] {
                print_kv("is_dpcp", res.is_dpcp ? "true" : "false");
                if (!res.reason.empty()) print_kv("reason", res.reason);
                print_number_kv("lambda", res.lambda);
            });
            return res.is_dpcp ? kExitOk : kExitFail;
        }
        if (*moments_cmd) {
            const qid::CharacteristicTriplet t = load_triplet(moments_file);
            const qid::Moments m = qid::moments(t);
            json j(m);
            if (alpha_set) {
                j["alpha"] = alpha;
                j["exp_moment"] = qid::exp_moment(t, alpha);
            }
            emit(j, out, [&] {
                print_number_kv("mean", m.mean);
                print_number_kv("variance", m.variance);
                if (alpha_set) print_number_kv("exp_moment", qid::exp_moment(t, alpha));
            });
            return kExitOk;
        }
        if (*laplace_cmd) {
            const qid::CharacteristicTriplet t = load_triplet(laplace_file);
            std::vector<double> values;
            for (double u : u_values) values.push_back(qid::laplace_eval(t, u));
            emit(json{{"u", u_values}, {"values", values}}, out, [&] {
                std::cout << std::setw(22) << "u" << std::setw(22) << "L(u)" << "\n";
                for (std::size_t i = 0; i < values.size(); ++i)
                    std::cout << std::setw(22) << std::setprecision(12) << u_values[i] << std::setw(22)
                              << std::setprecision(12) << values[i] << "\n";
            });
            return kExitOk;
        }
        if (*cuppens_cmd) {
            const qid::SeriesTriplet res = qid::cuppens_series(load_dist(cuppens_file), tail_tol);
            emit(json(res), out, [&] {
                print_number_kv("gamma", res.triplet.gamma);
                print_number_kv("tail_bound", res.tail_bound);
                print_kv("terms", std::to_string(res.terms));
                std::cout << "quasi-Levy atoms:\n";
                print_atoms(res.triplet.nu);
            });
            return kExitOk;
        }
        if (*approx_cmd) {
            const qid::LatticeDistribution input = load_dist(approx_file);
            const qid::ApproximationResult res = qid::approximate_until_qid(input, h);
            json j(res.dist);
            j["used_h"] = res.used_h;
            j["retries"] = res.retries;
            j["total_variation_gap"] = qid::l1_distance(input.to_measure(), res.dist.to_measure());
            emit(j, out, [&] {
                print_number_kv("used_h", res.used_h);
                print_kv("retries", std::to_string(res.retries));
                std::cout << "masses:\n";
                print_atoms(res.dist.to_measure());
            });
            return kExitOk;
        }
        if (*converge_cmd) {
            std::vector<fs::path> files;
            for (const auto& entry : fs::directory_iterator(converge_dir))
                if (entry.path().extension() == ".json") files.push_back(entry.path());
            std::sort(files.begin(), files.end());
            if (files.empty()) throw std::invalid_argument("no .json files in " + converge_dir);
            std::vector<qid::QidResult> seq;
            for (const auto& f : files) seq.push_back(qid::analyze(load_dist(f.string())));
            const qid::QidResult target = qid::analyze(load_dist(converge_target));
            const qid::ConvergenceReport report = qid::convergence_diag(seq, target, l1_threshold);
            emit(json(report), out, [&] {
                print_kv("converging", report.converging ? "true" : "false");
                print_kv("summary", report.summary);
                std::cout << std::setw(22) << "l1_to_target" << std::setw(22) << "|nu|(R)" << "\n";
                for (const auto& e : report.elements)
                    std::cout << std::setw(22) << std::setprecision(12) << e.l1_to_target << std::setw(22)
                              << std::setprecision(12) << e.nu_total_variation << "\n";
            });
            return report.converging ? kExitOk : kExitFail;
        }
        if (*validate_cmd) {
            const qid::ValidationReport report =
                qid::validate_necessary(load_triplet(validate_file), qid::default_z_grid());
            emit(json(report), out, [&] {
                print_kv("pass", report.pass ? "true" : "false");
                for (const auto& c : report.checks)
                    print_kv(c.name, std::string(c.applicable ? (c.pass ? "PASS" : "FAIL") : "n/a") +
                                         "  margin " + std::to_string(c.margin));
            });
            return report.pass ? kExitOk : kExitFail;
        }
        if (*synth_cmd) {
            const qid::CharacteristicTriplet t = load_triplet(synth_file);
            const auto samples = qid::sample_charfn(t, grid);
            json j;
            json sample_json = json::array();
            for (const auto& s : samples) sample_json.push_back(json::array({s.real(), s.imag()}));
            j["samples"] = sample_json;
            const bool integer_support = qid::integer_support_check(t);
            j["integer_support"] = integer_support;
            if (integer_support) j["synthesis"] = qid::synthesize_masses(t, grid);
            emit(j, out, [&] {
                print_kv("integer_support", integer_support ? "true" : "false");
                if (integer_support) {
                    const auto synth = qid::synthesize_masses(t, grid);
                    print_kv("first_index", std::to_string(synth.first_index));
                    std::cout << "masses:\n";
                    for (double m : synth.masses)
                        std::cout << std::setw(22) << std::setprecision(12) << m << "\n";
                }
            });
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
