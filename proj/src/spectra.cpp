#include "qg/spectra.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace qg {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPhaseTol = 1e-11;   // bisection stop, in phase units
constexpr double kMergeTol = 1e-10;   // k-distance below which levels merge
constexpr double kFluxTol = 1e-9;     // cycle flux ~ 0 (mod 2pi) threshold
}  // namespace

Eigen::MatrixXcd vertex_scattering(int degree, BoundaryCondition bc, double k) {
    if (degree < 1) throw std::domain_error("vertex degree must be >= 1");
    const int d = degree;
    std::complex<double> c;
    switch (bc.kind) {
        case BcKind::Kirchhoff:
            c = 2.0 / static_cast<double>(d);
            break;
        case BcKind::Dirichlet:
            c = 0.0;
            break;
        case BcKind::Delta:
            if (!(k > 0)) throw std::domain_error("delta scattering needs k > 0");
            c = 2.0 / std::complex<double>(d, bc.chi / k);
            break;
    }
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Constant(d, d, c);
    S.diagonal().array() -= 1.0;
    return S;
}

SecularOperator::SecularOperator(const MetricGraph& g) : g_(&g) {
    auto rep = validate(g);
    if (!rep.ok) throw std::invalid_argument("invalid graph: " + rep.first_violation);

    std::map<int, VertexBlock*> by_vertex;
    std::map<int, int> block_index;
    for (const auto& e : g.edges()) {
        int i = static_cast<int>(bonds_.edge_ids.size());
        bonds_.edge_ids.push_back(e.id);
        bonds_.length.push_back(e.length);
        bonds_.length.push_back(e.length);
        bonds_.alpha.push_back(e.alpha);
        bonds_.alpha.push_back(-e.alpha);
        bonds_.bond_tail.push_back(e.tail);
        bonds_.bond_head.push_back(e.head);
        bonds_.bond_tail.push_back(e.head);
        bonds_.bond_head.push_back(e.tail);
        max_len_ = std::max(max_len_, e.length);
        len_sum_ += 2.0 * e.length;
        (void)i;
    }
    for (const auto& v : g.vertices()) {
        if (g.degree(v.id) == 0) continue;
        VertexBlock blk;
        blk.degree = g.degree(v.id);
        blk.bc = v.bc;
        if (blk.bc.kind == BcKind::Delta && blk.bc.chi == 0.0)
            blk.bc = BoundaryCondition::kirchhoff();
        if (blk.bc.kind == BcKind::Delta) has_delta_ = true;
        for (int b = 0; b < bonds_.n_bonds(); ++b) {
            if (bonds_.bond_head[b] == v.id) blk.in_bonds.push_back(b);
            if (bonds_.bond_tail[b] == v.id) blk.out_bonds.push_back(b);
        }
        blocks_.push_back(std::move(blk));
    }
}

Eigen::MatrixXcd SecularOperator::scattering(double k) const {
    const int m = bonds_.n_bonds();
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(m, m);
    for (const auto& blk : blocks_) {
        std::complex<double> c;
        switch (blk.bc.kind) {
            case BcKind::Kirchhoff:
                c = 2.0 / static_cast<double>(blk.degree);
                break;
            case BcKind::Dirichlet:
                c = 0.0;
                break;
            case BcKind::Delta:
                c = 2.0 / std::complex<double>(blk.degree, blk.bc.chi / k);
                break;
        }
        for (int b : blk.in_bonds)
            for (int bo : blk.out_bonds)
                S(bo, b) = c - (bo == BondBasis::reversal(b) ? 1.0 : 0.0);
    }
    return S;
}

Eigen::MatrixXcd SecularOperator::unitary(double k) const {
    Eigen::MatrixXcd U = scattering(k);
    for (int b = 0; b < bonds_.n_bonds(); ++b) {
        std::complex<double> phase =
            std::polar(1.0, k * bonds_.length[b] + bonds_.alpha[b]);
        U.row(b) *= phase;
    }
    return U;
}

std::vector<double> SecularOperator::eigenphases(double k) const {
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(unitary(k), false);
    const auto& T = schur.matrixT();
    std::vector<double> phases(bonds_.n_bonds());
    for (int i = 0; i < bonds_.n_bonds(); ++i)
        phases[i] = std::arg(T(i, i));
    std::sort(phases.begin(), phases.end());
    return phases;
}

double SecularOperator::argdet_lift(double k) const {
    double a = k * len_sum_;
    for (const auto& blk : blocks_) {
        if (blk.bc.kind == BcKind::Delta)
            a -= 2.0 * std::atan2(blk.bc.chi / k, static_cast<double>(blk.degree));
    }
    return a;
}

double SecularOperator::phase_sum_mod(double k) const {
    double s = 0.0;
    for (double th : eigenphases(k)) s += (th < 0.0 ? th + kTwoPi : th);
    return s;
}

int Spectrum::count_below(double k) const {
    int n = (k > 0.0) ? zero_modes : 0;
    for (const auto& lv : levels) {
        if (lv.k < k)
            n += lv.multiplicity;
        else
            break;
    }
    return n;
}

int Spectrum::count_below_energy(double E) const {
    if (E <= 0.0) return 0;
    return count_below(std::sqrt(E));
}

std::vector<double> Spectrum::expanded() const {
    std::vector<double> out;
    out.reserve(total_levels());
    for (int i = 0; i < zero_modes; ++i) out.push_back(0.0);
    for (const auto& lv : levels)
        for (int i = 0; i < lv.multiplicity; ++i) out.push_back(lv.k);
    return out;
}

int Spectrum::total_levels() const {
    int n = zero_modes;
    for (const auto& lv : levels) n += lv.multiplicity;
    return n;
}

int zero_mode_count(const MetricGraph& g) {
    int zm = 0;
    for (const auto& comp : g.edge_components()) {
        bool kirchhoff_only = true;
        for (int vid : comp) {
            const auto& bc = g.vertex(vid).bc;
            if (!(bc.kind == BcKind::Kirchhoff ||
                  (bc.kind == BcKind::Delta && bc.chi == 0.0))) {
                kirchhoff_only = false;
                break;
            }
        }
        if (!kirchhoff_only) continue;

        // A constant-modulus flat mode exists iff every cycle flux vanishes
        // (mod 2pi). Spanning-tree potentials expose the holonomies.
        std::map<int, double> pot;
        pot[comp.front()] = 0.0;
        bool grew = true;
        std::vector<const Edge*> in_comp;
        for (const auto& e : g.edges())
            if (std::find(comp.begin(), comp.end(), e.tail) != comp.end())
                in_comp.push_back(&e);
        std::vector<bool> tree(in_comp.size(), false);
        while (grew) {
            grew = false;
            for (size_t i = 0; i < in_comp.size(); ++i) {
                const Edge& e = *in_comp[i];
                bool ht = pot.count(e.tail), hh = pot.count(e.head);
                if (ht && !hh) {
                    pot[e.head] = pot[e.tail] + e.alpha;
                    tree[i] = grew = true;
                } else if (!ht && hh) {
                    pot[e.tail] = pot[e.head] - e.alpha;
                    tree[i] = grew = true;
                }
            }
        }
        bool flat = true;
        for (size_t i = 0; i < in_comp.size(); ++i) {
            if (tree[i]) continue;
            const Edge& e = *in_comp[i];
            double flux = pot[e.tail] + e.alpha - pot[e.head];
            double frac = std::remainder(flux, kTwoPi);
            if (std::abs(frac) > kFluxTol) {
                flat = false;
                break;
            }
        }
        if (flat) ++zm;
    }
    return zm;
}

SpectralCounter::SpectralCounter(const MetricGraph& g)
    : sec_(g), zero_modes_(zero_mode_count(g)) {
    k0_ = 1e-6 / total_length(g);
    base_ = sec_.argdet_lift(k0_) - sec_.phase_sum_mod(k0_);
}

int SpectralCounter::count_raw(double k) const {
    double w = (sec_.argdet_lift(k) - sec_.phase_sum_mod(k) - base_) / kTwoPi;
    double r = std::round(w);
    if (std::abs(w - r) > 1e-6)
        throw std::runtime_error(
            "winding count failed integrality check (residual " +
            std::to_string(w - r) + ")");
    return static_cast<int>(r);
}

int SpectralCounter::count(double k, double tol) const {
    if (!(k > k0_)) throw std::domain_error("count requires k > 0");
    for (double th : sec_.eigenphases(k)) {
        double dist = std::min(std::abs(th), kTwoPi - std::abs(th));
        if (dist < tol * std::max(1.0, sec_.max_bond_length()))
            throw std::runtime_error(
                "k is within tolerance of an eigenvalue; perturb E");
    }
    return zero_modes_ + count_raw(k);
}

namespace {

void locate(const SpectralCounter& c, double a, int na, double b, int nb,
            double stop_width, std::vector<SpectrumLevel>& out) {
    if (nb == na) return;
    if (b - a <= stop_width) {
        out.push_back({0.5 * (a + b), nb - na});
        return;
    }
    double m = 0.5 * (a + b);
    int nm = c.count_raw(m);
    locate(c, a, na, m, nm, stop_width, out);
    locate(c, m, nm, b, nb, stop_width, out);
}

}  // namespace

Spectrum eigenvalues_up_to(const MetricGraph& g, double k_max) {
    if (!(k_max > 0)) throw std::domain_error("k_max must be positive");
    SpectralCounter c(g);
    const double L = total_length(g);
    const double step = std::numbers::pi / (2.0 * L);
    const double stop_width =
        kPhaseTol / std::max(1.0, c.secular().max_bond_length());

    std::vector<SpectrumLevel> found;
    double a = c.k0();
    int na = 0;  // count_raw(k0) = 0 by construction
    while (a < k_max) {
        double b = std::min(a + step, k_max);
        int nb = c.count_raw(b);
        locate(c, a, na, b, nb, stop_width, found);
        a = b;
        na = nb;
    }
    // merge near-coincident locations into multiplicities
    std::vector<SpectrumLevel> merged;
    for (const auto& lv : found) {
        if (!merged.empty() && lv.k - merged.back().k < kMergeTol)
            merged.back().multiplicity += lv.multiplicity;
        else
            merged.push_back(lv);
    }
    Spectrum s;
    s.levels = std::move(merged);
    s.k_max = k_max;
    s.zero_modes = c.zero_modes();
    return s;
}

Spectrum first_levels(const MetricGraph& g, int n_levels) {
    const double L = total_length(g);
    int margin = 2 * static_cast<int>(g.edges().size()) + 8;
    double k_max = std::numbers::pi * (n_levels + margin) / L;
    for (int attempt = 0; attempt < 8; ++attempt) {
        Spectrum s = eigenvalues_up_to(g, k_max);
        if (s.total_levels() - s.zero_modes >= n_levels) return s;
        k_max *= 1.3;
    }
    throw std::runtime_error("failed to certify the requested level count");
}

int count(const MetricGraph& g, double k) { return SpectralCounter(g).count(k); }

double weyl_ratio(const MetricGraph& g, double E) {
    if (!(E > 0)) throw std::domain_error("E must be positive");
    return count(g, std::sqrt(E)) / std::sqrt(E);
}

MetricGraph dirichlet_decouple(
    const MetricGraph& g, const std::vector<std::pair<int, double>>& points) {
    MetricGraph cur = g;
    for (const auto& [e, s] : points)
        cur = insert_vertex_at(cur, e, s, BoundaryCondition::dirichlet());
    return cur;
}

}  // namespace qg
