// spin_algebra.cpp — Dense finite-chain spin operators

#include "openbcs/spin_algebra.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace openbcs::spin {

namespace {

void check_sites(int n_sites) {
    if (n_sites < 1) {
        throw std::invalid_argument("n_sites must be >= 1");
    }
    if (n_sites > kMaxSites) {
        throw std::invalid_argument("n_sites " + std::to_string(n_sites) +
                                    " exceeds the dense-matrix cap of " +
                                    std::to_string(kMaxSites));
    }
}

void check_same_dim(const ManyBodyOperator& a, const ManyBodyOperator& b) {
    if (a.matrix.rows() != b.matrix.rows() || a.matrix.cols() != b.matrix.cols()) {
        throw std::invalid_argument("operator dimension mismatch");
    }
}

}  // namespace

ManyBodyOperator ManyBodyOperator::identity(int n_sites) {
    check_sites(n_sites);
    const Eigen::Index dim = Eigen::Index(1) << n_sites;
    return {n_sites, Matrix::Identity(dim, dim)};
}

ManyBodyOperator local_pauli(Kind kind, int site, int n_sites) {
    check_sites(n_sites);
    if (site < 1 || site > n_sites) {
        throw std::invalid_argument("site index " + std::to_string(site) +
                                    " out of range [1, " + std::to_string(n_sites) + "]");
    }
    if (kind == Kind::R) {
        throw std::invalid_argument("R is not a single-site operator");
    }

    const Eigen::Index dim = Eigen::Index(1) << n_sites;
    // Site 1 is the leftmost tensor factor, i.e. the most significant bit.
    const Eigen::Index mask = Eigen::Index(1) << (n_sites - site);
    Matrix m = Matrix::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        const bool bit_set = (col & mask) != 0;
        switch (kind) {
            case Kind::Zero:
                m(col, col) = bit_set ? -1.0 : 1.0;
                break;
            case Kind::Plus:
                if (bit_set) m(col & ~mask, col) = 1.0;
                break;
            case Kind::Minus:
                if (!bit_set) m(col | mask, col) = 1.0;
                break;
            case Kind::R:
                break;
        }
    }
    return {n_sites, std::move(m)};
}

ManyBodyOperator intensive(Kind kind, int n_sites) {
    check_sites(n_sites);
    if (kind == Kind::R) {
        const ManyBodyOperator sp = intensive(Kind::Plus, n_sites);
        const ManyBodyOperator sm = intensive(Kind::Minus, n_sites);
        return {n_sites, sp.matrix * sm.matrix};
    }
    const Eigen::Index dim = Eigen::Index(1) << n_sites;
    Matrix sum = Matrix::Zero(dim, dim);
    for (int j = 1; j <= n_sites; ++j) {
        sum += local_pauli(kind, j, n_sites).matrix;
    }
    return {n_sites, sum / double(n_sites)};
}

ManyBodyOperator bcs_hamiltonian(double epsilon_tilde, double g, int n_sites) {
    if (g <= 0.0) {
        throw std::invalid_argument("coupling g must be positive");
    }
    check_sites(n_sites);
    const ManyBodyOperator s0 = intensive(Kind::Zero, n_sites);
    const ManyBodyOperator r = intensive(Kind::R, n_sites);
    return {n_sites, double(n_sites) * (epsilon_tilde * s0.matrix - g * r.matrix)};
}

ManyBodyOperator commutator(const ManyBodyOperator& a, const ManyBodyOperator& b) {
    check_same_dim(a, b);
    return {a.n_sites, a.matrix * b.matrix - b.matrix * a.matrix};
}

double operator_norm(const ManyBodyOperator& a) {
    // sqrt of the largest eigenvalue of A^dag A; cheaper than a full SVD
    // and exact enough for the 1/N trend checks.
    const Matrix gram = a.matrix.adjoint() * a.matrix;
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("eigendecomposition failed in operator_norm");
    }
    const double lam = es.eigenvalues().maxCoeff();
    return std::sqrt(std::max(lam, 0.0));
}

double max_abs(const Matrix& a) {
    return a.cwiseAbs().maxCoeff();
}

ManyBodyOperator heisenberg_evolve(const ManyBodyOperator& h,
                                   const ManyBodyOperator& x, double t) {
    check_same_dim(h, x);
    const double scale = std::max(1.0, max_abs(h.matrix));
    if (max_abs(h.matrix - h.matrix.adjoint()) > 1e-12 * scale) {
        throw std::invalid_argument("heisenberg_evolve requires a hermitian generator");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("eigendecomposition failed in heisenberg_evolve");
    }
    const Matrix& v = es.eigenvectors();
    Eigen::VectorXcd phases(es.eigenvalues().size());
    for (Eigen::Index k = 0; k < phases.size(); ++k) {
        phases(k) = std::exp(Complex(0.0, es.eigenvalues()(k) * t));
    }
    const Matrix u = v * phases.asDiagonal() * v.adjoint();
    return {h.n_sites, u * x.matrix * u.adjoint()};
}

std::vector<DecayRow> commutator_decay_scan(Kind alpha, Kind beta, int site,
                                            const std::vector<int>& n_list) {
    std::vector<DecayRow> rows;
    rows.reserve(n_list.size());
    for (int n : n_list) {
        const ManyBodyOperator s = intensive(alpha, n);
        const ManyBodyOperator sig = local_pauli(beta, site, n);
        rows.push_back({n, operator_norm(commutator(s, sig))});
    }
    return rows;
}

}  // namespace openbcs::spin
