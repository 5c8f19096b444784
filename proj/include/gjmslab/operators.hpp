#ifndef GJMSLAB_OPERATORS_HPP
#define GJMSLAB_OPERATORS_HPP

#include <optional>
#include <ostream>
#include <string>

#include <Eigen/Sparse>

#include "gjmslab/geometry.hpp"

namespace gjms {

// Sparse discretized differential operator, second-order stencils.
// Matrices are assembled symmetrically (max |A - A^T| is exactly zero),
// never symmetrized after the fact.  Operators on a conformally rescaled
// metric are self-adjoint with respect to `inner_weights` rather than the
// Euclidean inner product.
struct OperatorMatrix {
    Eigen::SparseMatrix<double> mat;
    Lattice lattice;
    ManifoldModel model;
    std::string kind;
    int stencil_order = 2;
    std::optional<Eigen::VectorXd> inner_weights;

    Eigen::Index dim() const { return mat.rows(); }
    std::string metric_tag() const { return model.metric_tag(); }
    Eigen::VectorXd apply(const Eigen::VectorXd& v) const { return mat * v; }
    Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const { return mat * v; }
};

struct CurvatureField {
    GridFunction R;
    std::string provenance;
};

enum class FrameField { X, Y, T };

// Central-difference discretization of a left-invariant frame field
// (antisymmetric exactly).  Y_j is D_{y_j} + diag(x_j) D_t; the twisted
// wraparound in x is an index permutation, never an approximation.
OperatorMatrix assemble_vector_field(FrameField f, int j, const ManifoldModel& model,
                                     const Lattice& lat);

// Positive Laplacian of the bare metric: sum of 3-point second differences
// per frame direction; the mixed (y,t) part of Y_j^2 uses the expanded form
// D2_y + 2 diag(x) D_y D_t + diag(x^2) D2_t, which is exactly positive
// semidefinite blockwise and leaves no spurious lattice-scale kernel.
OperatorMatrix assemble_laplacian(const ManifoldModel& model, const Lattice& lat);

// Laplacian plus (n-2)/(4(n-1)) R.  With a conformal factor present the
// rescaled Laplacian e^{-2U}(Delta - (n-2) grad U . grad) is assembled
// directly with exact coefficient fields.
OperatorMatrix assemble_yamabe(const ManifoldModel& model, const Lattice& lat);

// Scalar curvature of e^{2U}g from the bare curvature, with exact trig
// derivatives of U.
CurvatureField conformal_scalar_curvature(const ManifoldModel& model, const Lattice& lat);

// Conjugation form of the covariance law:
//   P_hat = e^{-(n/2+k)U} P e^{(n/2-k)U},
// self-adjoint with respect to the e^{2U}g volume weights (recorded in
// inner_weights).
OperatorMatrix conjugated_operator(const OperatorMatrix& P, const GridFunction& upsilon, int k);

// Symmetric matrix e^{-kU} P e^{-kU}; similar to conjugated_operator(P,U,k)
// so eigenvalues and kernel dimension agree, but solvable with ordinary
// symmetric eigensolvers.
OperatorMatrix conjugated_symmetrized(const OperatorMatrix& P, const GridFunction& upsilon,
                                      int k);

// Fourth-order operator on the bare Heisenberg metric:
//   Delta^2 + A s^{2d+2} Delta + C s^2 T^2 + B s^{4d+4}.
OperatorMatrix assemble_paneitz_heisenberg(const ManifoldModel& model, const Lattice& lat);

double paneitz_delta_coeff(int d);     // A
double paneitz_t2_coeff(int d);        // C
double paneitz_constant_coeff(int d);  // B

double yamabe_curvature_factor(int n);  // (n-2)/(4(n-1))
double heisenberg_scalar_curvature(int d, double s);

// (row, col, value) text export, one entry per line, 17 significant digits.
void export_matrix(const OperatorMatrix& op, std::ostream& os);

// Exact symmetric sparse square with canonical accumulation order, so the
// result is bitwise symmetric.
Eigen::SparseMatrix<double> sym_square(const Eigen::SparseMatrix<double>& a);

// max |A P_shift - P_shift A| over the exact grid symmetries of the model
// (all axis shifts on the torus, the t-shift on the quotient).
double symmetry_commutator_residual(const OperatorMatrix& op);

namespace detail {
CurvatureField conformal_scalar_curvature_impl(const ManifoldModel& model, const Lattice& lat,
                                               double laplacian_term_sign);
}

}  // namespace gjms

#endif
