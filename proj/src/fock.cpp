// SPDX-License-Identifier: Apache-2.0
#include "cvbell/fock.hpp"

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

#include "cvbell/errors.hpp"
#include "cvbell/numeric.hpp"

namespace cvbell::fock {

namespace {

using RowBlock = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

long ipow(int base, int e) {
    long r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

void check_cutoff(int cutoff) {
    if (cutoff < 2) throw InvalidParameter("cutoff must be at least 2");
}

// In-place application of op to one mode of `copies` consecutive tensors
// stored as a flat array (a pure state, or the columns of a density matrix).
void apply_mode(Complex* data, long copies, int n_modes, int cutoff, int mode,
                const Eigen::MatrixXcd& op) {
    const long outer = copies * ipow(cutoff, mode);
    const long inner = ipow(cutoff, n_modes - 1 - mode);
    if (inner == 1) {
        Eigen::Map<Eigen::MatrixXcd> m(data, cutoff, outer);
        m = (op * m).eval();
        return;
    }
    const long block = cutoff * inner;
    RowBlock tmp(cutoff, inner);
    for (long o = 0; o < outer; ++o) {
        Eigen::Map<RowBlock> b(data + o * block, cutoff, inner);
        tmp.noalias() = op * b;
        b = tmp;
    }
}

void apply_all(Complex* data, long copies, int n_modes, int cutoff,
               const std::vector<Eigen::MatrixXcd>& ops) {
    for (int k = 0; k < n_modes; ++k) apply_mode(data, copies, n_modes, cutoff, k, ops[k]);
}

int modes_of(const FockState& s) {
    return std::visit([](const auto& v) { return v.n_modes; }, s);
}

int cutoff_of(const FockState& s) {
    return std::visit([](const auto& v) { return v.cutoff; }, s);
}

int suggest_cutoff(double ratio, double budget) {
    if (ratio <= 0.0) return 2;
    return static_cast<int>(std::ceil(std::log(budget) / std::log(ratio))) + 2;
}

}  // namespace

Complex FockPureState::amplitude(const std::vector<int>& photons) const {
    long idx = 0;
    for (int n : photons) {
        if (n < 0 || n >= cutoff) return 0.0;
        idx = idx * cutoff + n;
    }
    return amps[idx];
}

FockPureState vacuum(int n_modes, int cutoff) {
    check_cutoff(cutoff);
    FockPureState s{n_modes, cutoff, Eigen::VectorXcd::Zero(ipow(cutoff, n_modes))};
    s.amps[0] = 1.0;
    return s;
}

FockPureState build_t(const gaussian::TripartitePhotonNumbers& p, int cutoff, double tail_budget) {
    check_cutoff(cutoff);
    if (p.n2 < 0.0 || p.n3 < 0.0) throw InvalidParameter("photon numbers must be non-negative");
    const double n1 = p.n1();
    FockPureState s{3, cutoff, Eigen::VectorXcd::Zero(ipow(cutoff, 3))};
    const auto lf = numeric::log_factorials(cutoff);
    const double l2 = p.n2 > 0 ? std::log(p.n2 / (1.0 + n1)) : 0.0;
    const double l3 = p.n3 > 0 ? std::log(p.n3 / (1.0 + n1)) : 0.0;
    const double l0 = -0.5 * std::log1p(n1);
    for (int m = 0; m < cutoff; ++m) {
        for (int q = 0; q <= m; ++q) {
            const int pp = m - q;
            if ((pp > 0 && p.n2 == 0.0) || (q > 0 && p.n3 == 0.0)) continue;
            const double la = l0 + 0.5 * pp * l2 + 0.5 * q * l3 + 0.5 * (lf[m] - lf[pp] - lf[q]);
            const Complex phase = std::polar(1.0, -(pp * p.phi2 + q * p.phi3));
            s.amps[(static_cast<long>(m) * cutoff + pp) * cutoff + q] = std::exp(la) * phase;
        }
    }
    const double lost = 1.0 - s.norm_squared();
    if (lost > tail_budget)
        throw CutoffTooSmall("tripartite state truncation loses " + std::to_string(lost),
                             suggest_cutoff(n1 / (1.0 + n1), tail_budget));
    return s;
}

FockPureState build_twb(double x, int cutoff, double tail_budget) {
    check_cutoff(cutoff);
    if (!(x >= 0.0 && x < 1.0)) throw InvalidParameter("x must lie in [0, 1)");
    FockPureState s{2, cutoff, Eigen::VectorXcd::Zero(ipow(cutoff, 2))};
    const double c = std::sqrt(1.0 - x * x);
    double xn = 1.0;
    for (int n = 0; n < cutoff; ++n, xn *= x) s.amps[static_cast<long>(n) * cutoff + n] = c * xn;
    const double lost = 1.0 - s.norm_squared();
    if (lost > tail_budget)
        throw CutoffTooSmall("twin-beam truncation loses " + std::to_string(lost),
                             suggest_cutoff(x * x, tail_budget));
    return s;
}

Eigen::MatrixXcd annihilation(int cutoff) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(cutoff, cutoff);
    for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

Eigen::MatrixXcd displacement(Complex alpha, int cutoff) {
    check_cutoff(cutoff);
    if (std::norm(alpha) > cutoff / 10.0)
        throw PrecisionError("displacement too large for cutoff (|alpha|^2 > cutoff/10)");
    const Eigen::MatrixXcd a = annihilation(cutoff);
    const Eigen::MatrixXcd gen = alpha * a.adjoint() - std::conj(alpha) * a;
    return gen.exp();
}

Eigen::MatrixXcd displaced_parity(Complex alpha, int cutoff) {
    const Eigen::MatrixXcd d = displacement(alpha, cutoff);
    Eigen::VectorXcd parity(cutoff);
    for (int n = 0; n < cutoff; ++n) parity[n] = (n % 2 == 0) ? 1.0 : -1.0;
    return d * parity.asDiagonal() * d.adjoint();
}

Eigen::MatrixXcd pseudospin_matrix(double theta, double phi, int cutoff, bool shifted) {
    check_cutoff(cutoff);
    if (!shifted && cutoff % 2 != 0) throw InvalidParameter("pseudospin needs an even cutoff");
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(cutoff, cutoff);
    const double c = std::cos(theta), s = std::sin(theta);
    const Complex em = std::polar(s, phi);  // coefficient of s_-
    const int first = shifted ? 1 : 0;
    if (shifted) m(0, 0) = -c;
    for (int lo = first; lo + 1 < cutoff; lo += 2) {
        const int hi = lo + 1;
        m(lo, lo) = -c;
        m(hi, hi) = c;
        m(lo, hi) = em;
        m(hi, lo) = std::conj(em);
    }
    if (shifted && (cutoff - first) % 2 != 0) m(cutoff - 1, cutoff - 1) = -c;
    return m;
}

Eigen::MatrixXcd orthant_sign(double theta, int cutoff) {
    check_cutoff(cutoff);
    const double L = std::sqrt(2.0 * cutoff) + 12.0;
    const int nodes = 4 * cutoff + 120;
    const auto q = numeric::gauss_legendre(nodes, 0.0, L);
    Eigen::MatrixXd half = Eigen::MatrixXd::Zero(cutoff, cutoff);
    for (int i = 0; i < nodes; ++i) {
        const auto psi = numeric::hermite_functions(cutoff, q.nodes[i]);
        const Eigen::Map<const Eigen::VectorXd> v(psi.data(), cutoff);
        half.noalias() += q.weights[i] * v * v.transpose();
    }
    for (int n = 0; n < cutoff; ++n)
        if (std::abs(half(n, n) - 0.5) > 1e-10)
            throw PrecisionError("half-line quadrature did not converge");
    Eigen::MatrixXcd sgn = Eigen::MatrixXcd::Zero(cutoff, cutoff);
    for (int n = 0; n < cutoff; ++n)
        for (int m = 0; m < cutoff; ++m)
            if ((n + m) % 2 == 1) sgn(n, m) = std::polar(2.0 * half(n, m), theta * (n - m));
    return sgn;
}

Complex expect_product(const FockState& state, const std::vector<Eigen::MatrixXcd>& ops) {
    const int n = modes_of(state);
    const int d = cutoff_of(state);
    if (static_cast<int>(ops.size()) != n) throw InvalidParameter("one operator per mode required");
    for (const auto& op : ops)
        if (op.rows() != d || op.cols() != d) throw InvalidParameter("operator dimension mismatch");
    if (const auto* pure = std::get_if<FockPureState>(&state)) {
        Eigen::VectorXcd phi = pure->amps;
        apply_all(phi.data(), 1, n, d, ops);
        return pure->amps.dot(phi) / pure->norm_squared();
    }
    const auto& rho = std::get<FockDensityOperator>(state);
    Eigen::MatrixXcd x = rho.matrix;
    apply_all(x.data(), x.cols(), n, d, ops);
    return x.trace() / rho.matrix.trace();
}

double displaced_parity_expect(const FockState& state, const std::vector<Complex>& alphas) {
    const int d = cutoff_of(state);
    std::vector<Eigen::MatrixXcd> ops;
    for (const auto& a : alphas) ops.push_back(displaced_parity(a, d));
    return expect_product(state, ops).real();
}

double pseudospin_expect(const FockState& state, const std::vector<double>& thetas,
                         const std::vector<double>& phis, const std::vector<bool>& shifted) {
    const int d = cutoff_of(state);
    if (thetas.size() != phis.size()) throw InvalidParameter("angle vectors differ in length");
    std::vector<Eigen::MatrixXcd> ops;
    for (size_t k = 0; k < thetas.size(); ++k) {
        const bool sh = k < shifted.size() && shifted[k];
        ops.push_back(pseudospin_matrix(thetas[k], phis[k], d, sh));
    }
    return expect_product(state, ops).real();
}

double wigner_reconstruct(const FockState& state, const Eigen::VectorXd& point) {
    const int n = modes_of(state);
    if (point.size() != 2 * n) throw InvalidParameter("point has wrong dimension");
    std::vector<Complex> alphas(n);
    for (int k = 0; k < n; ++k) alphas[k] = Complex(point[k], point[n + k]) / std::sqrt(2.0);
    return displaced_parity_expect(state, alphas) / std::pow(std::numbers::pi, n);
}

OnOffResult onoff_condition(const FockPureState& state, int mode, double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw InvalidParameter("eta must lie in [0, 1]");
    if (mode < 0 || mode >= state.n_modes) throw InvalidParameter("mode index out of range");
    if (state.n_modes < 2) throw InvalidParameter("need at least two modes");
    const int d = state.cutoff;
    const int rest = state.n_modes - 1;
    const long dim = ipow(d, rest);
    const long inner = ipow(d, state.n_modes - 1 - mode);
    const long outer = ipow(d, mode);

    OnOffResult out;
    out.state = FockDensityOperator{rest, d, Eigen::MatrixXcd::Zero(dim, dim)};
    const double norm = state.norm_squared();
    // Columns hold sqrt(weight) times the slice at photon number k of the measured mode.
    Eigen::MatrixXcd slices = Eigen::MatrixXcd::Zero(dim, d);
    for (int k = 0; k < d; ++k) {
        const double w = 1.0 - std::pow(1.0 - eta, k);
        if (w == 0.0) continue;
        const double sw = std::sqrt(w / norm);
        for (long o = 0; o < outer; ++o)
            for (long t = 0; t < inner; ++t)
                slices(o * inner + t, k) = sw * state.amps[(o * d + k) * inner + t];
    }
    out.state.matrix.noalias() = slices * slices.adjoint();
    out.probability = out.state.matrix.trace().real();
    if (out.probability <= 0.0) {
        out.degenerate = true;
        out.probability = 0.0;
        return out;
    }
    out.state.matrix /= out.probability;
    return out;
}

std::array<double, 4> quadrature_orthant_probabilities(const FockState& state, double theta,
                                                       double phi) {
    if (modes_of(state) != 2) throw InvalidParameter("orthant expectation needs two modes");
    const int d = cutoff_of(state);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
    const Eigen::MatrixXcd s1 = orthant_sign(theta, d);
    const Eigen::MatrixXcd s2 = orthant_sign(phi, d);
    const Eigen::MatrixXcd p1[2] = {0.5 * (id + s1), 0.5 * (id - s1)};
    const Eigen::MatrixXcd p2[2] = {0.5 * (id + s2), 0.5 * (id - s2)};
    std::array<double, 4> out{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out[2 * i + j] = expect_product(state, {p1[i], p2[j]}).real();
    return out;
}

double quadrature_orthant_expect(const FockState& state, double theta, double phi) {
    const auto p = quadrature_orthant_probabilities(state, theta, phi);
    return p[0] + p[3] - p[1] - p[2];
}

double pi_correlator_quadrature(const gaussian::GaussianState& s, const std::vector<PiAxis>& axes,
                                int nodes) {
    const int n = s.n_modes();
    if (static_cast<int>(axes.size()) != n) throw InvalidParameter("one axis per mode required");

    // Marginalise the y of every X mode, keep everything else.
    std::vector<int> keep;
    std::vector<int> integrated;  // positions within keep
    double factor = 1.0;
    for (int k = 0; k < n; ++k) {
        keep.push_back(k);
        if (axes[k] == PiAxis::X) integrated.push_back(static_cast<int>(keep.size()) - 1);
    }
    for (int k = 0; k < n; ++k) {
        if (axes[k] == PiAxis::X) continue;
        keep.push_back(n + k);
        if (axes[k] == PiAxis::Y) {
            integrated.push_back(static_cast<int>(keep.size()) - 1);
            factor *= -1.0;
        } else {
            factor *= -std::numbers::pi;
        }
    }
    const int m = static_cast<int>(keep.size());
    Eigen::MatrixXd sigma(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) sigma(i, j) = 0.5 * s.cov()(keep[i], keep[j]);
    const Eigen::MatrixXd prec = sigma.inverse();
    const double norm = std::pow(2.0 * std::numbers::pi, -0.5 * m) / std::sqrt(sigma.determinant());

    const int k = static_cast<int>(integrated.size());
    std::vector<int> ys;  // which integrated dims carry 1/u
    for (int i = 0; i < k; ++i) ys.push_back(keep[integrated[i]] >= n ? 1 : 0);
    if (k == 0) return factor * norm;

    Eigen::MatrixXd pii(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) pii(i, j) = prec(integrated[i], integrated[j]);
    const Eigen::MatrixXd cov_ii = pii.inverse();
    std::vector<numeric::Quadrature> rules;
    for (int i = 0; i < k; ++i)
        rules.push_back(numeric::gauss_legendre(nodes, 0.0, 12.0 * std::sqrt(cov_ii(i, i))));

    // Fold every axis onto [0, L]: both kernels are odd, so each sign
    // pattern contributes with the product of its signs.
    double total = 0.0;
    std::vector<int> idx(k, 0);
    Eigen::VectorXd u(k), v(k);
    const int patterns = 1 << k;
    while (true) {
        double w = 1.0;
        for (int i = 0; i < k; ++i) {
            u[i] = rules[i].nodes[idx[i]];
            w *= rules[i].weights[idx[i]];
            if (ys[i]) w /= u[i];
        }
        double acc = 0.0;
        for (int sp = 0; sp < patterns; ++sp) {
            double sign = 1.0;
            for (int i = 0; i < k; ++i) {
                const bool neg = (sp >> i) & 1;
                v[i] = neg ? -u[i] : u[i];
                if (neg) sign = -sign;
            }
            acc += sign * std::exp(-0.5 * v.dot(pii * v));
        }
        total += w * acc;
        int pos = 0;
        while (pos < k && ++idx[pos] == nodes) idx[pos++] = 0;
        if (pos == k) break;
    }
    return factor * norm * total;
}

}  // namespace cvbell::fock
