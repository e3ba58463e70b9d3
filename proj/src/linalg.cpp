#include "ngl/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <functional>
#include <stdexcept>

namespace ngl {

Mat kron(const Mat& a, const Mat& b) {
    Mat c(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            c.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return c;
}

Vec kron_vec(const Vec& a, const Vec& b) {
    Vec c(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        c.segment(i * b.size(), b.size()) = a(i) * b;
    return c;
}

Vec apply_local(const Vec& state, const std::vector<int>& dims, int player, const Mat& m) {
    long long total = 1;
    for (int d : dims) total *= d;
    if (state.size() != total) throw std::invalid_argument("apply_local: state/dims mismatch");
    const int d = dims[static_cast<size_t>(player)];
    if (m.rows() != d || m.cols() != d) throw std::invalid_argument("apply_local: operator dimension mismatch");

    long long right = 1;
    for (size_t p = static_cast<size_t>(player) + 1; p < dims.size(); ++p) right *= dims[p];
    const long long left = total / (right * d);

    Vec out = Vec::Zero(total);
    for (long long l = 0; l < left; ++l) {
        const long long base = l * d * right;
        for (long long r = 0; r < right; ++r)
            for (int i = 0; i < d; ++i) {
                cxd acc = 0.0;
                for (int j = 0; j < d; ++j) acc += m(i, j) * state(base + j * right + r);
                out(base + i * right + r) = acc;
            }
    }
    return out;
}

Vec apply_product(const Vec& state, const std::vector<int>& dims, const std::vector<const Mat*>& ops) {
    Vec cur = state;
    for (size_t p = 0; p < ops.size(); ++p)
        if (ops[p] != nullptr && ops[p]->size() != 0) cur = apply_local(cur, dims, static_cast<int>(p), *ops[p]);
    return cur;
}

Vec permute_modes(const Vec& state, const std::vector<int>& dims, const std::vector<int>& perm) {
    const size_t k = dims.size();
    if (perm.size() != k) throw std::invalid_argument("permute_modes: perm size");
    long long total = 1;
    for (int d : dims) total *= d;

    std::vector<long long> old_stride(k, 1);
    for (size_t p = k; p-- > 1;) old_stride[p - 1] = old_stride[p] * dims[p];

    std::vector<int> new_dims(k);
    for (size_t p = 0; p < k; ++p) new_dims[p] = dims[static_cast<size_t>(perm[p])];
    std::vector<long long> new_stride(k, 1);
    for (size_t p = k; p-- > 1;) new_stride[p - 1] = new_stride[p] * new_dims[p];

    Vec out(total);
    std::vector<int> idx(k, 0);
    for (long long flat = 0; flat < total; ++flat) {
        long long rem = flat;
        for (size_t p = 0; p < k; ++p) { idx[p] = static_cast<int>(rem / old_stride[p]); rem %= old_stride[p]; }
        long long nflat = 0;
        for (size_t p = 0; p < k; ++p) nflat += new_stride[p] * idx[static_cast<size_t>(perm[p])];
        out(nflat) = state(flat);
    }
    return out;
}

bool is_hermitian(const Mat& m, double tol) {
    return (m - m.adjoint()).norm() <= tol;
}

double observable_defect(const Mat& m) {
    const double herm = (m - m.adjoint()).norm();
    const double invol = (m * m - Mat::Identity(m.rows(), m.cols())).norm();
    return herm > invol ? herm : invol;
}

RVec hermitian_eigenvalues(const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

Mat hermitian_function(const Mat& m, const std::function<cxd(double)>& f) {
    Eigen::SelfAdjointEigenSolver<Mat> es(m);
    Vec d(m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i) d(i) = f(es.eigenvalues()(i));
    return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

Mat abs_op_impl(const Mat& m) {
    return hermitian_function(m, [](double x) { return cxd(std::abs(x), 0.0); });
}

Mat sign_op_impl(const Mat& m) {
    bool dummy = false;
    return sign_op_impl(m, 1e-10, &dummy);
}

Mat sign_op_impl(const Mat& m, double degenerate_tol, bool* degenerate) {
    Eigen::SelfAdjointEigenSolver<Mat> es(m);
    Vec d(m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const double x = es.eigenvalues()(i);
        if (std::abs(x) < degenerate_tol) {
            if (degenerate) *degenerate = true;
            d(i) = 0.0;
        } else {
            d(i) = x > 0 ? 1.0 : -1.0;
        }
    }
    return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

long long distinct_tuple_count(int n, int k) {
    long long c = 1;
    for (int j = 0; j < k; ++j) c *= (n - j);
    return c;
}

std::vector<std::vector<int>> distinct_tuples(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::vector<bool> used(static_cast<size_t>(n), false);
    std::function<void()> rec = [&]() {
        if (static_cast<int>(cur.size()) == k) { out.push_back(cur); return; }
        for (int i = 0; i < n; ++i) {
            if (used[static_cast<size_t>(i)]) continue;
            used[static_cast<size_t>(i)] = true;
            cur.push_back(i);
            rec();
            cur.pop_back();
            used[static_cast<size_t>(i)] = false;
        }
    };
    rec();
    return out;
}

long long distinct_tuple_index(int n, const std::vector<int>& tuple) {
    // Lexicographic rank among ordered tuples of distinct elements.
    const int k = static_cast<int>(tuple.size());
    long long rank = 0;
    std::vector<bool> used(static_cast<size_t>(n), false);
    for (int pos = 0; pos < k; ++pos) {
        int smaller = 0;
        for (int v = 0; v < tuple[static_cast<size_t>(pos)]; ++v)
            if (!used[static_cast<size_t>(v)]) ++smaller;
        long long suffix = 1;
        for (int j = pos + 1; j < k; ++j) suffix *= (n - j);
        rank += smaller * suffix;
        used[static_cast<size_t>(tuple[static_cast<size_t>(pos)])] = true;
    }
    return rank;
}

Vec Rng::random_state(int dim) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v(i) = cxd(normal(), normal());
    v.normalize();
    return v;
}

RVec Rng::random_real_unit(int dim) {
    RVec v(dim);
    for (int i = 0; i < dim; ++i) v(i) = normal();
    v.normalize();
    return v;
}

Mat Rng::random_unitary(int dim) {
    Mat g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = cxd(normal(), normal());
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < dim; ++i)
        if (std::abs(r(i, i)) > 0) q.col(i) *= r(i, i) / std::abs(r(i, i));
    return q;
}

Mat Rng::random_observable(int dim) {
    const Mat u = random_unitary(dim);
    Vec d(dim);
    bool has_plus = false, has_minus = false;
    for (int i = 0; i < dim; ++i) {
        const bool plus = uniform() < 0.5;
        d(i) = plus ? 1.0 : -1.0;
        (plus ? has_plus : has_minus) = true;
    }
    if (!has_plus) d(0) = 1.0;
    if (!has_minus && dim > 1) d(dim - 1) = -1.0;
    return u * d.asDiagonal() * u.adjoint();
}

}  // namespace ngl
