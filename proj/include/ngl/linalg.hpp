#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace ngl {

using cxd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline Mat pauli_i() { return Mat::Identity(2, 2); }
inline Mat pauli_x() { Mat m(2, 2); m << 0, 1, 1, 0; return m; }
inline Mat pauli_y() { Mat m(2, 2); m << 0, cxd(0, -1), cxd(0, 1), 0; return m; }
inline Mat pauli_z() { Mat m(2, 2); m << 1, 0, 0, -1; return m; }

Mat kron(const Mat& a, const Mat& b);
Vec kron_vec(const Vec& a, const Vec& b);

// Applies M to tensor mode `player` of a state over local dimensions `dims`.
Vec apply_local(const Vec& state, const std::vector<int>& dims, int player, const Mat& m);

// Applies one single-site matrix per mode (identity where the entry is empty).
Vec apply_product(const Vec& state, const std::vector<int>& dims, const std::vector<const Mat*>& ops);

// Reorders tensor factors: new mode k holds old mode perm[k].
Vec permute_modes(const Vec& state, const std::vector<int>& dims, const std::vector<int>& perm);

bool is_hermitian(const Mat& m, double tol = 1e-9);
double observable_defect(const Mat& m);  // max(‖M−M†‖_F, ‖M²−I‖_F)

// Eigenvalues ascending for a Hermitian matrix.
RVec hermitian_eigenvalues(const Mat& m);

// f applied through the eigendecomposition of a Hermitian matrix.
Mat hermitian_function(const Mat& m, const std::function<cxd(double)>& f);

Mat abs_op_impl(const Mat& m);   // |M| = sqrt(M²)
Mat sign_op_impl(const Mat& m);  // sign(M); eigenvalues below `degenerate_tol` map to 0
Mat sign_op_impl(const Mat& m, double degenerate_tol, bool* degenerate);

// Enumeration of ordered k-tuples of distinct elements of {0..n-1},
// lexicographic. Shared by game builders and strategy indexing.
long long distinct_tuple_count(int n, int k);
std::vector<std::vector<int>> distinct_tuples(int n, int k);
long long distinct_tuple_index(int n, const std::vector<int>& tuple);

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(gen); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen); }
    int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); }

    Vec random_state(int dim);           // Haar-ish unit vector
    RVec random_real_unit(int dim);
    Mat random_unitary(int dim);         // QR of a Gaussian complex matrix
    Mat random_observable(int dim);      // Hermitian with spectrum ±1
};

}  // namespace ngl
