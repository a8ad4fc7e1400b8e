// Command-line front end: spectra, transformations, shift reports, lemma
// verification, finite-difference oracle runs, and ensemble walks, with a
// reproducibility manifest written next to every output.
//
// Exit codes: 0 success; 2 input/validation failure; 3 numerical
// certification failure; 4 verified property violated (loud).

#include <cmath>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qg/discrete.hpp"
#include "qg/ensemble.hpp"
#include "qg/fd_oracle.hpp"
#include "qg/fixtures.hpp"
#include "qg/json_io.hpp"
#include "qg/metric_graph.hpp"
#include "qg/perturbation.hpp"
#include "qg/shift.hpp"
#include "qg/spectra.hpp"
#include "qg/transform.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitCertification = 3;
constexpr int kExitViolation = 4;

// FNV-1a, for the manifest's input digests.
std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

struct Manifest {
    std::string command;
    json parameters = json::object();
    json inputs = json::object();
    json tolerances = json::object();

    void add_input(const std::string& role, const std::string& path,
                   const std::string& content) {
        inputs[role] = {{"path", path}, {"fnv1a", fnv1a_hex(content)}};
    }
    void write(const fs::path& dir) const {
        json j = {{"command", command},
                  {"parameters", parameters},
                  {"inputs", inputs},
                  {"tolerances", tolerances},
                  {"timestamp", static_cast<long>(std::time(nullptr))}};
        write_file((dir / "manifest.json").string(), j.dump(2) + "\n");
    }
};

void write_csv(const fs::path& path, const std::string& content) {
    write_file(path.string(), content);
}

std::string perm_str(const std::vector<int>& p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += '|';
        s += std::to_string(p[i]);
    }
    return s;
}

// Proven per-edit interlacing bounds; a log's bound is their sum.
int edit_bound(const Transformation& t) {
    switch (t.kind) {
        case TransformKind::Switch:
        case TransformKind::Crossing:
        case TransformKind::Reversal:
            return 1;
        case TransformKind::Swap:
        case TransformKind::SegmentExchange:
            return 2;
        case TransformKind::Insert:
        case TransformKind::Remove:
            return 0;
    }
    return 0;
}

std::string spectrum_csv(const Spectrum& s) {
    std::ostringstream os;
    os << "n,k,E,multiplicity\n";
    os.precision(15);
    int n = 1;
    for (int z = 0; z < s.zero_modes; ++z) os << n++ << ",0,0,1\n";
    for (const auto& lv : s.levels)
        for (int m = 0; m < lv.multiplicity; ++m) {
            os << n++ << "," << lv.k << "," << lv.k * lv.k << ","
               << lv.multiplicity << "\n";
        }
    return os.str();
}

std::string histogram_csv(const ShiftHistogram& h) {
    std::ostringstream os;
    os << "dN,count\n";
    for (const auto& [dn, c] : h.counts) os << dn << "," << c << "\n";
    return os.str();
}

int run_spectrum(const std::string& graph_path, double kmax, int levels,
                 const fs::path& out) {
    const std::string text = read_file(graph_path);
    MetricGraph g = metric_graph_from_json(text);
    Spectrum s = kmax > 0 ? eigenvalues_up_to(g, kmax) : first_levels(g, levels);

    Manifest m;
    m.command = "spectrum";
    m.parameters = {{"kmax", kmax}, {"levels", levels}};
    m.tolerances = {{"winding_integrality", 1e-6}};
    m.add_input("graph", graph_path, text);
    m.write(out);
    write_csv(out / "spectrum.csv", spectrum_csv(s));
    std::cout << "wrote " << (out / "spectrum.csv").string() << " ("
              << s.total_levels() << " levels, certified k_max " << s.k_max
              << ")\n";
    return kExitOk;
}

int run_dspectrum(const std::string& graph_path, const fs::path& out) {
    const std::string text = read_file(graph_path);
    DiscreteGraph d = discrete_graph_from_json(text);
    Eigen::VectorXd ev = eigenvalues(assemble(d));

    Manifest m;
    m.command = "dspectrum";
    m.add_input("graph", graph_path, text);
    m.write(out);
    std::ostringstream os;
    os << "n,E\n";
    os.precision(15);
    for (int i = 0; i < ev.size(); ++i) os << i + 1 << "," << ev(i) << "\n";
    write_csv(out / "dspectrum.csv", os.str());
    std::cout << "wrote " << (out / "dspectrum.csv").string() << " ("
              << ev.size() << " eigenvalues)\n";
    return kExitOk;
}

int run_transform(const std::string& graph_path, const std::string& log_path,
                  const fs::path& out) {
    const std::string gtext = read_file(graph_path);
    const std::string ltext = read_file(log_path);
    MetricGraph g = metric_graph_from_json(gtext);
    std::vector<Transformation> log = transformation_log_from_jsonl(ltext);
    MetricGraph t = replay(g, log);

    Manifest m;
    m.command = "transform";
    m.add_input("graph", graph_path, gtext);
    m.add_input("log", log_path, ltext);
    m.write(out);
    write_file((out / "transformed.json").string(), metric_graph_to_json(t));
    std::cout << "wrote " << (out / "transformed.json").string() << " ("
              << log.size() << " edits)\n";
    return kExitOk;
}

int run_shift(const std::string& graph_path, const std::string& log_path,
              int levels, int samples, std::uint64_t seed,
              const fs::path& out) {
    const std::string gtext = read_file(graph_path);
    const std::string ltext = read_file(log_path);
    MetricGraph a = metric_graph_from_json(gtext);
    std::vector<Transformation> log = transformation_log_from_jsonl(ltext);
    MetricGraph b = replay(a, log);

    Spectrum sa = first_levels(a, levels);
    Spectrum sb = first_levels(b, levels);
    const int rstar = interlacing_degree(sa, sb);
    ShiftHistogram h = shift_histogram(sa, sb, samples, seed);

    int bound = 0;
    for (const auto& t : log) bound += edit_bound(t);

    Manifest m;
    m.command = "shift";
    m.parameters = {{"levels", levels}, {"samples", samples}, {"seed", seed}};
    m.tolerances = {{"eigenvalue_guard", 1e-9}, {"gap_guard", 1e-7}};
    m.add_input("graph", graph_path, gtext);
    m.add_input("log", log_path, ltext);
    m.write(out);

    json report = {{"interlacing_degree", rstar},
                   {"bound", bound},
                   {"max_abs_shift", h.max_abs_shift()},
                   {"samples", h.n_samples},
                   {"resamples", h.resamples},
                   {"k_max", h.k_max}};
    write_file((out / "shift_report.json").string(), report.dump(2) + "\n");
    write_csv(out / "histogram.csv", histogram_csv(h));
    std::cout << "interlacing degree r* = " << rstar << " (bound " << bound
              << "), max |dN| = " << h.max_abs_shift() << "\n";
    if (rstar > bound) {
        std::cerr << "INTERLACING BOUND VIOLATED: r* = " << rstar << " > "
                  << bound << " for " << log_path << " applied to "
                  << graph_path << "\n";
        return kExitViolation;
    }
    return kExitOk;
}

int run_verify_lemmas(int fixtures, std::uint64_t seed, const fs::path& out) {
    int violations = 0;
    double worst_antisym = 0.0;
    int worst_rank_margin = 0, worst_refl_margin = 0;

    for (int i = 0; i < fixtures; ++i) {
        const int n = 8;
        const int rank = 1 + static_cast<int>((seed + i) % 4);
        PerturbationFixture fx = make_fixture(n, rank, seed + 1000 * i);
        Eigen::MatrixXcd HK = fx.H0 + fx.K;
        Eigen::MatrixXcd HT = fx.H0 + fx.T * fx.K * fx.T.adjoint();
        std::vector<const Eigen::MatrixXcd*> ops = {&fx.H0, &HK, &HT};
        auto grid = safe_energy_grid(ops, 24, seed + 7 * i + 1);

        const int xi = verify_rank_bound(fx, grid);
        if (xi > fx.rank_K) ++violations;
        worst_rank_margin = std::max(worst_rank_margin, xi);

        ReflectionVerdict rv = verify_reflection_bound(fx, grid);
        if (rv.max_shift > (fx.rank_K + 1) / 2) ++violations;
        worst_refl_margin = std::max(worst_refl_margin, rv.max_shift);
        worst_antisym = std::max(worst_antisym, rv.antisym_residual);
        if (rv.antisym_residual > 1e-10) ++violations;
    }

    // split construction: lambda family monotone, stabilized, conjugation
    // shift bounded by 1, conjugation difference rank 2
    int split_checked = 0;
    for (int i = 0; i < std::min(fixtures, 50); ++i) {
        SplitFixture fx = split_fixture(seed + 31 * i);
        Eigen::MatrixXcd H = assemble(fx.graph);
        SplitOperator sp = split_endpoints(H, fx.A, fx.B,
                                           {fx.a_next, fx.b_next},
                                           {fx.vert, fx.vert});
        const double E = -0.37 + 0.11 * static_cast<double>(i % 7);
        const int nH = counting(H, E);
        int prev = 1 << 20;
        for (double lam : {1.0, 1e2, 1e4, 1e6, 1e8}) {
            Eigen::MatrixXcd Hl = lambda_family(sp, lam);
            const int nl = counting(Hl, E);
            if (nl > prev && prev != (1 << 20)) ++violations;
            Eigen::MatrixXcd Hc = switch_conjugate(sp, Hl);
            if (std::abs(counting(Hc, E) - nl) > 1) ++violations;
            Eigen::FullPivLU<Eigen::MatrixXcd> lu(Hc - Hl);
            if (lu.rank() > 2) ++violations;
            prev = nl;
        }
        Eigen::MatrixXcd Hinf = lambda_family(sp, 1e8 * H.norm());
        if (counting(Hinf, E) != nH) ++violations;
        ++split_checked;
    }

    Manifest m;
    m.command = "verify-lemmas";
    m.parameters = {{"fixtures", fixtures}, {"seed", seed}};
    m.tolerances = {{"antisym_residual", 1e-10}};
    m.write(out);
    json report = {{"fixtures", fixtures},
                   {"split_fixtures", split_checked},
                   {"violations", violations},
                   {"max_rank_shift", worst_rank_margin},
                   {"max_reflection_shift", worst_refl_margin},
                   {"max_antisym_residual", worst_antisym}};
    write_file((out / "lemmas_report.json").string(), report.dump(2) + "\n");
    std::cout << report.dump(2) << "\n";
    return violations == 0 ? kExitOk : kExitViolation;
}

int run_oracle(const std::string& graph_path, int levels, double h,
               const fs::path& out) {
    const std::string text = read_file(graph_path);
    MetricGraph g = metric_graph_from_json(text);
    auto rows = oracle_eigenvalues(g, levels, h);

    Manifest m;
    m.command = "oracle";
    m.parameters = {{"levels", levels}, {"h", h}};
    m.tolerances = {{"convergence_reject", 0.5}};
    m.add_input("graph", graph_path, text);
    m.write(out);
    std::ostringstream os;
    os << "n,E,error_estimate\n";
    os.precision(15);
    for (std::size_t i = 0; i < rows.size(); ++i)
        os << i + 1 << "," << rows[i].energy << "," << rows[i].error_estimate
           << "\n";
    write_csv(out / "oracle.csv", os.str());
    std::cout << "wrote " << (out / "oracle.csv").string() << "\n";
    return kExitOk;
}

std::vector<double> lengths_from_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_array())
        throw std::invalid_argument("lengths file must be a JSON array");
    return j.get<std::vector<double>>();
}

int run_walk(const std::string& topo_path, const std::string& len_path,
             long steps, std::uint64_t seed, const fs::path& out) {
    const std::string ttext = read_file(topo_path);
    const std::string ltext = read_file(len_path);
    MetricGraph topo = metric_graph_from_json(ttext);
    std::vector<double> lens = lengths_from_json(ltext);
    WalkResult r = walk(topo, lens, steps, seed);

    Manifest m;
    m.command = "ensemble walk";
    m.parameters = {{"steps", steps}, {"seed", seed}};
    m.add_input("topology", topo_path, ttext);
    m.add_input("lengths", len_path, ltext);
    m.write(out);

    std::ostringstream os;
    os << "step,delta_from_start\n";
    for (std::size_t i = 0; i < r.delta_from_start.size(); ++i)
        os << i << "," << r.delta_from_start[i] << "\n";
    write_csv(out / "trajectory.csv", os.str());

    std::ostringstream vs;
    vs << "perm,count\n";
    for (const auto& [p, c] : r.visit_counts)
        vs << perm_str(p) << "," << c << "\n";
    write_csv(out / "visits.csv", vs.str());
    std::cout << "final arrangement " << perm_str(r.final_perm) << ", "
              << r.visit_counts.size() << " distinct states visited\n";
    return kExitOk;
}

int run_pairs(const std::string& topo_path, const std::string& len_path,
              int pairs, std::uint64_t seed, int levels, const fs::path& out) {
    const std::string ttext = read_file(topo_path);
    const std::string ltext = read_file(len_path);
    MetricGraph topo = metric_graph_from_json(ttext);
    std::vector<double> lens = lengths_from_json(ltext);
    auto rows = shift_vs_distance(topo, lens, pairs, seed, levels);

    Manifest m;
    m.command = "ensemble pairs";
    m.parameters = {{"pairs", pairs}, {"seed", seed}, {"levels", levels}};
    m.add_input("topology", topo_path, ttext);
    m.add_input("lengths", len_path, ltext);
    m.write(out);

    std::ostringstream os;
    os << "pi,sigma,delta,rstar\n";
    int violations = 0;
    for (const auto& row : rows) {
        os << perm_str(row.pi) << "," << perm_str(row.sigma) << ","
           << row.delta << "," << row.rstar << "\n";
        if (row.rstar > 2 * row.delta) ++violations;
    }
    write_csv(out / "pairs.csv", os.str());
    std::cout << "wrote " << (out / "pairs.csv").string() << "\n";
    if (violations > 0) {
        std::cerr << "INTERLACING BOUND VIOLATED: r* > 2*distance on "
                  << violations << " pair(s)\n";
        return kExitViolation;
    }
    return kExitOk;
}

int run_figure3(int levels, int samples, std::uint64_t seed,
                const fs::path& out) {
    MetricGraph g = tetrahedron();
    MetricGraph sw = edge_switch(g, {0, EdgeEnd::Tail}, {5, EdgeEnd::Tail});
    MetricGraph swp = edge_swap(g, 0, 5);

    Spectrum s0 = first_levels(g, levels);
    Spectrum s1 = first_levels(sw, levels);
    Spectrum s2 = first_levels(swp, levels);
    ShiftHistogram hs = shift_histogram(s0, s1, samples, seed);
    ShiftHistogram hw = shift_histogram(s0, s2, samples, seed + 1);

    Manifest m;
    m.command = "figure3";
    m.parameters = {{"levels", levels}, {"samples", samples}, {"seed", seed}};
    m.write(out);
    write_csv(out / "switch_hist.csv", histogram_csv(hs));
    write_csv(out / "swap_hist.csv", histogram_csv(hw));
    std::cout << "switch max |dN| = " << hs.max_abs_shift()
              << ", swap max |dN| = " << hw.max_abs_shift() << "\n";
    if (hs.max_abs_shift() > 1 || hw.max_abs_shift() > 2) {
        std::cerr << "INTERLACING BOUND VIOLATED in histogram support\n";
        return kExitViolation;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"metric- and discrete-graph spectral toolkit"};
    app.require_subcommand(1);

    std::string graph_path, log_path, topo_path, len_path;
    std::string out_dir = ".";
    double kmax = 0.0, h = 5e-3;
    int levels = 100, samples = 1000, pairs = 20;
    long steps = 1000;
    std::uint64_t seed = 1;
    int fixtures = 100;

    auto add_out = [&](CLI::App* c) {
        c->add_option("--out", out_dir, "output directory");
    };

    auto* c_spec = app.add_subcommand("spectrum", "metric graph spectrum CSV");
    c_spec->add_option("--graph", graph_path, "graph JSON")->required();
    c_spec->add_option("--kmax", kmax, "certified range in k (overrides --levels)");
    c_spec->add_option("--levels", levels, "minimum level count");
    add_out(c_spec);

    auto* c_dspec = app.add_subcommand("dspectrum", "discrete operator spectrum CSV");
    c_dspec->add_option("--graph", graph_path, "discrete graph JSON")->required();
    add_out(c_dspec);

    auto* c_tr = app.add_subcommand("transform", "replay a transformation log");
    c_tr->add_option("--graph", graph_path, "graph JSON")->required();
    c_tr->add_option("--log", log_path, "JSONL transformation log")->required();
    add_out(c_tr);

    auto* c_sh = app.add_subcommand("shift", "counting-shift report + histogram");
    c_sh->add_option("--graph", graph_path, "graph JSON")->required();
    c_sh->add_option("--transform", log_path, "JSONL transformation log")->required();
    c_sh->add_option("--levels", levels, "levels per spectrum");
    c_sh->add_option("--samples", samples, "energy samples");
    c_sh->add_option("--seed", seed, "RNG seed");
    add_out(c_sh);

    auto* c_vl = app.add_subcommand("verify-lemmas",
                                    "rank/reflection/split-construction checks");
    c_vl->add_option("--fixtures", fixtures, "random fixtures per lemma");
    c_vl->add_option("--seed", seed, "RNG seed");
    add_out(c_vl);

    auto* c_or = app.add_subcommand("oracle", "finite-difference eigenvalue oracle");
    c_or->add_option("--graph", graph_path, "graph JSON")->required();
    c_or->add_option("--levels", levels, "levels (1..20)");
    c_or->add_option("--step", h, "target grid step");
    add_out(c_or);

    auto* c_en = app.add_subcommand("ensemble", "length-arrangement ensemble");
    c_en->require_subcommand(1);
    auto* c_walk = c_en->add_subcommand("walk", "random transposition walk");
    c_walk->add_option("--topology", topo_path, "topology graph JSON")->required();
    c_walk->add_option("--lengths", len_path, "JSON array of lengths")->required();
    c_walk->add_option("--steps", steps, "walk steps");
    c_walk->add_option("--seed", seed, "RNG seed");
    add_out(c_walk);
    auto* c_pairs = c_en->add_subcommand("pairs", "shift vs swap distance");
    c_pairs->add_option("--topology", topo_path, "topology graph JSON")->required();
    c_pairs->add_option("--lengths", len_path, "JSON array of lengths")->required();
    c_pairs->add_option("--pairs", pairs, "sampled pairs");
    c_pairs->add_option("--seed", seed, "RNG seed");
    c_pairs->add_option("--levels", levels, "levels per spectrum");
    add_out(c_pairs);

    auto* c_f3 = app.add_subcommand(
        "figure3", "canned pipeline: tetrahedron switch + swap histograms");
    c_f3->add_option("--levels", levels, "levels per spectrum");
    c_f3->add_option("--samples", samples, "energy samples");
    c_f3->add_option("--seed", seed, "RNG seed");
    add_out(c_f3);

    CLI11_PARSE(app, argc, argv);

    try {
        fs::path out(out_dir);
        fs::create_directories(out);
        if (*c_spec) return run_spectrum(graph_path, kmax, levels, out);
        if (*c_dspec) return run_dspectrum(graph_path, out);
        if (*c_tr) return run_transform(graph_path, log_path, out);
        if (*c_sh)
            return run_shift(graph_path, log_path, levels, samples, seed, out);
        if (*c_vl) return run_verify_lemmas(fixtures, seed, out);
        if (*c_or) return run_oracle(graph_path, levels, h, out);
        if (*c_walk) return run_walk(topo_path, len_path, steps, seed, out);
        if (*c_pairs)
            return run_pairs(topo_path, len_path, pairs, seed, levels, out);
        if (*c_f3) return run_figure3(levels, samples, seed, out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::runtime_error& e) {
        std::cerr << "numerical certification failure: " << e.what() << "\n";
        return kExitCertification;
    }
    return kExitOk;
}
