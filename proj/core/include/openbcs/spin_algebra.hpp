// spin_algebra.hpp — Exact dense spin operators for small BCS chains

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace openbcs::spin {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Operator kinds: the single-site ladder/diagonal matrices and, for the
// intensive family, the pair-correlation product R = S+ S-.
enum class Kind { Plus, Minus, Zero, R };

// Hard cap on the chain length; 2^12 keeps dense matrices desk-sized.
inline constexpr int kMaxSites = 12;

// Dense operator on an N-site spin chain. Site 1 occupies the leftmost
// tensor factor (most significant bit of the basis index).
struct ManyBodyOperator {
    int n_sites{0};
    Matrix matrix;

    Eigen::Index dim() const { return matrix.rows(); }

    static ManyBodyOperator identity(int n_sites);
};

// sigma_j^kind embedded in the N-site chain (kind must not be R).
ManyBodyOperator local_pauli(Kind kind, int site, int n_sites);

// Site-averaged operators: S_N^kind = (1/N) sum_j sigma_j^kind, or
// R_N = S_N^+ S_N^- for Kind::R.
ManyBodyOperator intensive(Kind kind, int n_sites);

// H = epsilon_tilde * sum_j sigma_j^0 - (g/N) sum_{ij} sigma_i^+ sigma_j^-,
// equivalently N (epsilon_tilde S^0 - g R).
ManyBodyOperator bcs_hamiltonian(double epsilon_tilde, double g, int n_sites);

ManyBodyOperator commutator(const ManyBodyOperator& a, const ManyBodyOperator& b);

// Spectral norm (largest singular value).
double operator_norm(const ManyBodyOperator& a);

// Largest entry magnitude; the workhorse for "equals zero" assertions.
double max_abs(const Matrix& a);

// e^{iHt} X e^{-iHt} via hermitian eigendecomposition of H.
ManyBodyOperator heisenberg_evolve(const ManyBodyOperator& h,
                                   const ManyBodyOperator& x, double t);

struct DecayRow {
    int n_sites;
    double norm;   // ||[S_N^alpha, sigma_site^beta]||
};

// Norm of [S_N^alpha, sigma_site^beta] along a list of chain lengths;
// the products N * norm stay constant (1/N decay of the commutators).
std::vector<DecayRow> commutator_decay_scan(Kind alpha, Kind beta, int site,
                                            const std::vector<int>& n_list);

}  // namespace openbcs::spin
