#include "gjmslab/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gjms {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

int wrap(int m, int N) {
    int r = m % N;
    return r < 0 ? r + N : r;
}
}  // namespace

double TrigPoly::eval(std::span<const double> z) const {
    double v = 0.0;
    for (const auto& t : terms) {
        double phase = 0.0;
        for (std::size_t a = 0; a < t.freq.size() && a < z.size(); ++a)
            phase += t.freq[a] * z[a];
        phase *= kTwoPi;
        v += t.cos_amp * std::cos(phase) + t.sin_amp * std::sin(phase);
    }
    return v;
}

TrigPoly TrigPoly::derivative(int axis) const {
    TrigPoly out;
    for (const auto& t : terms) {
        int k = axis < static_cast<int>(t.freq.size()) ? t.freq[axis] : 0;
        if (k == 0) continue;
        double f = kTwoPi * k;
        // d/dz [a cos + b sin] = f * (b cos - a sin)
        out.terms.push_back({t.freq, f * t.sin_amp, -f * t.cos_amp});
    }
    return out;
}

TrigPoly TrigPoly::second_derivative(int axis) const {
    TrigPoly out;
    for (const auto& t : terms) {
        int k = axis < static_cast<int>(t.freq.size()) ? t.freq[axis] : 0;
        if (k == 0) continue;
        double f = kTwoPi * k;
        out.terms.push_back({t.freq, -f * f * t.cos_amp, -f * f * t.sin_amp});
    }
    return out;
}

int TrigPoly::max_axes() const {
    int m = 0;
    for (const auto& t : terms) m = std::max<int>(m, static_cast<int>(t.freq.size()));
    return m;
}

ManifoldModel ManifoldModel::flat_torus(int n) {
    if (n < 3) throw std::invalid_argument("flat torus requires dimension n >= 3");
    ManifoldModel m;
    m.kind = ModelKind::FlatTorus;
    m.torus_dim = n;
    return m;
}

ManifoldModel ManifoldModel::heisenberg(int d, double s) {
    if (d < 1) throw std::invalid_argument("Heisenberg index d must be >= 1");
    if (!(s > 0.0)) throw std::invalid_argument("Heisenberg parameter s must be > 0");
    ManifoldModel m;
    m.kind = ModelKind::Heisenberg;
    m.heis_index = d;
    m.s = s;
    return m;
}

ManifoldModel ManifoldModel::with_upsilon(TrigPoly u) const {
    if (kind == ModelKind::Heisenberg) {
        // Gamma-invariance of a trig polynomial forces zero t-frequency.
        for (const auto& t : u.terms) {
            int t_axis = 2 * heis_index;
            if (t_axis < static_cast<int>(t.freq.size()) && t.freq[t_axis] != 0)
                throw std::invalid_argument(
                    "conformal factor on the Heisenberg quotient must have zero t-frequency");
        }
    }
    if (u.max_axes() > dim())
        throw std::invalid_argument("conformal factor references more axes than the model has");
    ManifoldModel m = *this;
    m.upsilon = std::move(u);
    return m;
}

std::string ManifoldModel::metric_tag() const {
    std::string base;
    if (kind == ModelKind::FlatTorus) {
        base = "flat[n=" + std::to_string(torus_dim) + "]";
    } else {
        base = "g_s[d=" + std::to_string(heis_index) + ",s=" + std::to_string(s) + "]";
    }
    return has_upsilon() ? "e^{2U}" + base : base;
}

Lattice::Lattice(ModelKind kind, int axes, int pairs, int N)
    : kind_(kind),
      ident_(kind == ModelKind::Heisenberg ? Identification::HeisenbergTwisted
                                           : Identification::Periodic),
      axes_(axes),
      pairs_(pairs),
      N_(N) {
    size_ = 1;
    for (int a = 0; a < axes_; ++a) {
        size_ *= static_cast<std::size_t>(N_);
        if (size_ > (std::size_t{1} << 31))
            throw std::invalid_argument("lattice too large");
    }
}

std::size_t Lattice::flat(std::span<const int> mi) const {
    std::size_t idx = 0;
    for (int a = 0; a < axes_; ++a) idx = idx * N_ + static_cast<std::size_t>(wrap(mi[a], N_));
    return idx;
}

void Lattice::multi(std::size_t idx, std::span<int> mi) const {
    for (int a = axes_ - 1; a >= 0; --a) {
        mi[a] = static_cast<int>(idx % N_);
        idx /= N_;
    }
}

void Lattice::coords(std::size_t idx, std::span<double> z) const {
    std::array<int, 8> mi{};
    multi(idx, std::span<int>(mi.data(), axes_));
    for (int a = 0; a < axes_; ++a) z[a] = mi[a] * spacing();
}

std::size_t Lattice::neighbor(std::size_t idx, int axis, int step) const {
    std::array<int, 8> mi{};
    multi(idx, std::span<int>(mi.data(), axes_));
    int m = mi[axis] + step;
    if (ident_ == Identification::HeisenbergTwisted && axis < pairs_) {
        int t_axis = 2 * pairs_;
        if (m == N_) {
            m = 0;
            mi[t_axis] = wrap(mi[t_axis] - mi[pairs_ + axis], N_);
        } else if (m < 0) {
            m = N_ - 1;
            mi[t_axis] = wrap(mi[t_axis] + mi[pairs_ + axis], N_);
        }
    } else {
        m = wrap(m, N_);
    }
    mi[axis] = m;
    return flat(std::span<const int>(mi.data(), axes_));
}

Lattice build_lattice(const ManifoldModel& model, int N) {
    if (N < 4) throw std::invalid_argument("lattice needs at least 4 points per axis");
    if (N % 2 != 0) throw std::invalid_argument("points per axis must be even");
    if (model.kind == ModelKind::Heisenberg)
        return Lattice(ModelKind::Heisenberg, model.dim(), model.heis_index, N);
    return Lattice(ModelKind::FlatTorus, model.dim(), 0, N);
}

GridFunction sample(const Lattice& lat, const std::function<double(std::span<const double>)>& f) {
    GridFunction g{lat, Eigen::VectorXd(lat.size())};
    std::array<double, 8> z{};
    for (std::size_t i = 0; i < lat.size(); ++i) {
        lat.coords(i, std::span<double>(z.data(), lat.axes()));
        g.values[static_cast<Eigen::Index>(i)] = f(std::span<const double>(z.data(), lat.axes()));
    }
    return g;
}

GridFunctionC sample_complex(const Lattice& lat,
                             const std::function<Complex(std::span<const double>)>& f) {
    GridFunctionC g{lat, Eigen::VectorXcd(lat.size())};
    std::array<double, 8> z{};
    for (std::size_t i = 0; i < lat.size(); ++i) {
        lat.coords(i, std::span<double>(z.data(), lat.axes()));
        g.values[static_cast<Eigen::Index>(i)] = f(std::span<const double>(z.data(), lat.axes()));
    }
    return g;
}

GridFunction sample(const Lattice& lat, const TrigPoly& p) {
    return sample(lat, [&p](std::span<const double> z) { return p.eval(z); });
}

GridFunction real_part(const GridFunctionC& u) { return {u.lattice, u.values.real()}; }
GridFunction imag_part(const GridFunctionC& u) { return {u.lattice, u.values.imag()}; }
GridFunction abs_part(const GridFunctionC& u) { return {u.lattice, u.values.cwiseAbs()}; }

double quotient_consistency_residual(const Lattice& lat,
                                     const std::function<Complex(std::span<const double>)>& f) {
    std::array<double, 8> z{};
    std::array<double, 8> zs{};
    const int n = lat.axes();
    double res = 0.0;
    for (std::size_t i = 0; i < lat.size(); ++i) {
        lat.coords(i, std::span<double>(z.data(), n));
        for (int a = 0; a < n; ++a) {
            std::copy(z.begin(), z.begin() + n, zs.begin());
            zs[a] += 1.0;  // one full period across axis a
            Complex outside = f(std::span<const double>(zs.data(), n));
            std::copy(z.begin(), z.begin() + n, zs.begin());
            if (lat.identification() == Identification::HeisenbergTwisted && a < lat.pairs()) {
                // f(x_j + 1, y, t) must equal f(x, y, t - y_j)
                zs[2 * lat.pairs()] -= zs[lat.pairs() + a];
            }
            Complex inside = f(std::span<const double>(zs.data(), n));
            res = std::max(res, std::abs(outside - inside));
        }
    }
    return res;
}

ConformalDensity transform_density(const ConformalDensity& u, const GridFunction& upsilon) {
    if (!(u.values.lattice == upsilon.lattice))
        throw std::invalid_argument("density and conformal factor live on different lattices");
    ConformalDensity out;
    out.weight = u.weight;
    out.metric = "e^{2U}" + u.metric;
    out.values.lattice = u.values.lattice;
    out.values.values = u.values.values.array() * (u.weight * upsilon.values.array()).exp();
    return out;
}

QuadratureWeights quadrature_weights(const ManifoldModel& model, const Lattice& lat) {
    const int n = model.dim();
    const double cell = std::pow(lat.spacing(), n);
    QuadratureWeights q{lat, Eigen::VectorXd::Constant(lat.size(), cell)};
    if (model.has_upsilon()) {
        GridFunction u = sample(lat, model.upsilon);
        q.w = q.w.array() * (n * u.values.array()).exp();
    }
    return q;
}

QuadratureWeights conformal_rescale(const QuadratureWeights& w, const GridFunction& upsilon) {
    if (!(w.lattice == upsilon.lattice))
        throw std::invalid_argument("weights and conformal factor live on different lattices");
    QuadratureWeights out{w.lattice,
                          w.w.array() * (w.lattice.axes() * upsilon.values.array()).exp()};
    return out;
}

double integrate(const GridFunction& f, const QuadratureWeights& w) {
    if (!(f.lattice == w.lattice))
        throw std::invalid_argument("function and weights live on different lattices");
    return f.values.dot(w.w);
}

namespace detail {
Eigen::MatrixXd heisenberg_metric_matrix(int d, double s, std::span<const double> z) {
    // Coordinates (x_1..x_d, y_1..y_d, t); g_s = sum dx^2 + s^-2 sum dy^2
    // + s^{2d} theta^2 with theta = dt - sum x_j dy_j.
    const int n = 2 * d + 1;
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
    const double s2d = std::pow(s, 2.0 * d);
    for (int j = 0; j < d; ++j) {
        g(j, j) = 1.0;
        g(d + j, n - 1) = -s2d * z[j];
        g(n - 1, d + j) = -s2d * z[j];
        for (int i = 0; i < d; ++i)
            g(d + j, d + i) = (i == j ? 1.0 / (s * s) : 0.0) + s2d * z[j] * z[i];
    }
    g(n - 1, n - 1) = s2d;
    return g;
}
}  // namespace detail

}  // namespace gjms
