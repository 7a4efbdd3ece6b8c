#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace adkit {

using cplx = std::complex<double>;
using cvec = Eigen::VectorXcd;
using cmat = Eigen::MatrixXcd;
using rvec = Eigen::VectorXd;
using rmat = Eigen::MatrixXd;

/// A single length-M snapshot x.
using Observation = cvec;

/// Execution policy for kernels that ship both an OpenMP path and a serial reference path.
enum class Exec { Serial, Parallel };

/// Raised when two operands disagree on the dimension M.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised for inputs outside an operation's mathematical domain (zero norm, bad range).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Raised when an enumeration would exceed a configured size bound.
struct CapacityError : std::length_error {
    using std::length_error::length_error;
    std::size_t reached = 0;
    CapacityError(const std::string& what, std::size_t partial)
        : std::length_error(what), reached(partial) {}
};

/// Hermitian matrix with a cached descending eigendecomposition.
struct CovEstimate {
    cmat matrix;
    rvec eigenvalues;   // descending
    cmat eigenvectors;  // columns aligned with eigenvalues

    CovEstimate() = default;
    /// Symmetrizes the input as (A + A^H)/2 and eigendecomposes it.
    explicit CovEstimate(const cmat& a);

    int dim() const { return static_cast<int>(matrix.rows()); }
    double trace() const { return matrix.trace().real(); }
};

}  // namespace adkit
