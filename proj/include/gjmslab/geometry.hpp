#ifndef GJMSLAB_GEOMETRY_HPP
#define GJMSLAB_GEOMETRY_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gjms {

using Complex = std::complex<double>;

// A real trigonometric polynomial on the unit cube: sum of
// a*cos(2*pi*k.z) + b*sin(2*pi*k.z) over integer frequency vectors k.
// All derivatives are evaluated exactly, so conformal factors built from
// these never contribute discretization error of their own.
struct TrigTerm {
    std::vector<int> freq;
    double cos_amp = 0.0;
    double sin_amp = 0.0;
};

struct TrigPoly {
    std::vector<TrigTerm> terms;

    bool empty() const { return terms.empty(); }
    double eval(std::span<const double> z) const;
    // Exact partial derivative along one coordinate axis.
    TrigPoly derivative(int axis) const;
    // Exact second partial derivative along one axis.
    TrigPoly second_derivative(int axis) const;
    int max_axes() const;
};

enum class ModelKind { FlatTorus, Heisenberg };

// A flat torus T^n or a Heisenberg quotient with metric parameter s,
// optionally carrying a conformal factor Upsilon (trig polynomial).
struct ManifoldModel {
    ModelKind kind = ModelKind::FlatTorus;
    int torus_dim = 3;   // n, FlatTorus only
    int heis_index = 1;  // d, Heisenberg only (total dimension 2d+1)
    double s = 1.0;      // Heisenberg metric parameter, > 0
    TrigPoly upsilon;    // empty means the bare metric

    static ManifoldModel flat_torus(int n);
    static ManifoldModel heisenberg(int d, double s);

    int dim() const { return kind == ModelKind::FlatTorus ? torus_dim : 2 * heis_index + 1; }
    bool has_upsilon() const { return !upsilon.empty(); }
    ManifoldModel with_upsilon(TrigPoly u) const;
    std::string metric_tag() const;
};

enum class Identification { Periodic, HeisenbergTwisted };

// Uniform N^n lattice over the fundamental domain [0,1)^n with grid
// coordinates m*h, h = 1/N.  For the Heisenberg quotient the axes are
// ordered (x_1..x_d, y_1..y_d, t) and stepping across an x_j boundary
// lands on a t-shifted column: f(x_j+1, y, t) = f(x, y, t - y_j).
// The shift is by the integer y-index, so it is an exact permutation.
class Lattice {
  public:
    Lattice() = default;
    Lattice(ModelKind kind, int axes, int pairs, int points_per_axis);

    int axes() const { return axes_; }
    int pairs() const { return pairs_; }  // d, twisted lattices only
    int points_per_axis() const { return N_; }
    double spacing() const { return 1.0 / N_; }
    Identification identification() const { return ident_; }
    ModelKind kind() const { return kind_; }
    std::size_t size() const { return size_; }

    std::size_t flat(std::span<const int> mi) const;
    void multi(std::size_t idx, std::span<int> mi) const;
    void coords(std::size_t idx, std::span<double> z) const;

    // Index of the neighbor one grid step along `axis` (step = +1 or -1),
    // honoring the identification rule.
    std::size_t neighbor(std::size_t idx, int axis, int step) const;

    bool operator==(const Lattice& o) const {
        return kind_ == o.kind_ && axes_ == o.axes_ && pairs_ == o.pairs_ && N_ == o.N_;
    }

  private:
    ModelKind kind_ = ModelKind::FlatTorus;
    Identification ident_ = Identification::Periodic;
    int axes_ = 0;
    int pairs_ = 0;
    int N_ = 0;
    std::size_t size_ = 0;
};

Lattice build_lattice(const ManifoldModel& model, int points_per_axis);

struct GridFunction {
    Lattice lattice;
    Eigen::VectorXd values;
};

struct GridFunctionC {
    Lattice lattice;
    Eigen::VectorXcd values;
};

GridFunction sample(const Lattice& lat, const std::function<double(std::span<const double>)>& f);
GridFunctionC sample_complex(const Lattice& lat,
                             const std::function<Complex(std::span<const double>)>& f);
GridFunction sample(const Lattice& lat, const TrigPoly& p);
GridFunction real_part(const GridFunctionC& u);
GridFunction imag_part(const GridFunctionC& u);
GridFunction abs_part(const GridFunctionC& u);

// Residual of the identification law for an analytically given function:
// max over grid points and generators of |f(shifted across a boundary) -
// f(identified image)|.  Zero (up to the sampler's own accuracy) exactly
// when f descends to the quotient.
double quotient_consistency_residual(const Lattice& lat,
                                     const std::function<Complex(std::span<const double>)>& f);

// A conformal density of weight w: representative values tied to a
// representative metric; re-expressing against e^{2U}g multiplies the
// values by e^{wU}.
struct ConformalDensity {
    double weight = 0.0;
    std::string metric;
    GridFunction values;
};

ConformalDensity transform_density(const ConformalDensity& u, const GridFunction& upsilon);

struct QuadratureWeights {
    Lattice lattice;
    Eigen::VectorXd w;
};

// h^n times the metric volume density.  The coframe {dx_j, s^-1 dy_j, s^d
// theta} is orthonormal for g_s, so det(g_s) = 1 and the bare density is 1
// for both models; a conformal factor contributes e^{n*Upsilon}.
QuadratureWeights quadrature_weights(const ManifoldModel& model, const Lattice& lat);
QuadratureWeights conformal_rescale(const QuadratureWeights& w, const GridFunction& upsilon);

double integrate(const GridFunction& f, const QuadratureWeights& w);

namespace detail {
// Dense coordinate-metric matrix of g_s at a point, used by tests to
// validate det(g_s) = 1 numerically.
Eigen::MatrixXd heisenberg_metric_matrix(int d, double s, std::span<const double> z);
}  // namespace detail

}  // namespace gjms

#endif
