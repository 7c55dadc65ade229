// qcore.hpp
// Dense complex linear algebra and quantum-state primitives: state vectors,
// density matrices, unitaries, channels, tensor products and measurement.
// Everything is immutable after construction and all operations are pure
// functions, so values can be shared freely across threads.
//
// Conventions:
//   * matrices are dense, row-major, dimension capped at 2^10;
//   * in tensor products the LEFT factor is the most-significant subsystem;
//   * construction validates invariants at 1e-9, conservation laws are
//     asserted by tests at 1e-12.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qgames::qcore {

using Cplx = std::complex<double>;

inline constexpr double kValidationTol = 1e-9;
inline constexpr double kConservationTol = 1e-12;
inline constexpr std::size_t kMaxDim = 1024;  // 2^10; the games here need <= 2^3

inline bool finite(Cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// ---------------------------------------------------------------------------
// Matrix: dense row-major complex matrix (internal workhorse).
// ---------------------------------------------------------------------------

class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}

    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Cplx(0.0, 0.0)) {
        if (rows == 0 || cols == 0) throw std::invalid_argument("Matrix: zero dimension");
        if (rows > kMaxDim || cols > kMaxDim) throw std::invalid_argument("Matrix: dimension above cap");
    }

    Matrix(std::size_t rows, std::size_t cols, std::vector<Cplx> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (rows == 0 || cols == 0) throw std::invalid_argument("Matrix: zero dimension");
        if (rows > kMaxDim || cols > kMaxDim) throw std::invalid_argument("Matrix: dimension above cap");
        if (data_.size() != rows * cols) throw std::invalid_argument("Matrix: data size mismatch");
        for (Cplx z : data_) {
            if (!finite(z)) throw std::invalid_argument("Matrix: non-finite entry");
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Cplx(1.0, 0.0);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    Cplx operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Cplx> data() const { return data_; }

    Matrix dagger() const {
        Matrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
        return out;
    }

    Cplx trace() const {
        Cplx t(0.0, 0.0);
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (Cplx z : data_) m = std::max(m, std::abs(z));
        return m;
    }

    Matrix& operator+=(const Matrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Matrix& operator*=(Cplx s) {
        for (Cplx& z : data_) z *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, Cplx s) { return a *= s; }
    friend Matrix operator*(Cplx s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix multiply: shape mismatch");
        Matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Cplx aik = a(i, k);
                if (aik == Cplx(0.0, 0.0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
            }
        }
        return out;
    }

private:
    void check_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("Matrix: shape mismatch");
    }

    std::size_t rows_, cols_;
    std::vector<Cplx> data_;
};

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

inline bool approx_equal(const Matrix& a, const Matrix& b, double tol) {
    return max_abs_diff(a, b) <= tol;
}

// Kronecker product; the left factor indexes the most-significant subsystem.
inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Cplx aij = a(i, j);
            if (aij == Cplx(0.0, 0.0)) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

inline double hermiticity_defect(const Matrix& m) {
    double d = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
    return d;
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver: cyclic Jacobi with complex plane rotations.
// Matrices here are tiny (<= 8x8 in the games, <= kMaxDim by contract), so
// Jacobi is exact enough at 1e-12 and keeps the module dependency-free.
// ---------------------------------------------------------------------------

struct EigenSystem {
    std::vector<double> values;  // ascending
    Matrix vectors;              // column k is the eigenvector of values[k]
};

inline EigenSystem hermitian_eigensystem(const Matrix& input) {
    if (input.rows() != input.cols())
        throw std::invalid_argument("hermitian_eigensystem: matrix not square");
    const std::size_t n = input.rows();

    // Work on the Hermitian part; callers pass matrices that are Hermitian
    // up to rounding.
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = 0.5 * (input(i, j) + std::conj(input(j, i)));
    Matrix v = Matrix::identity(n);

    const double scale = std::max(1.0, a.max_abs());
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off <= 1e-15 * scale) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Cplx apq = a(p, q);
                const double absg = std::abs(apq);
                if (absg <= 1e-300) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double phi = std::arg(apq);
                const double tau = (app - aqq) / (2.0 * absg);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double sigma = t * c;
                const Cplx s = sigma * std::exp(Cplx(0.0, -phi));

                // A <- R^dagger A R with R acting in the (p,q) plane:
                // R_pp = c, R_pq = -conj(s), R_qp = s, R_qq = c.
                for (std::size_t k = 0; k < n; ++k) {  // columns
                    const Cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp + s * akq;
                    a(k, q) = -std::conj(s) * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {  // rows
                    const Cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk + std::conj(s) * aqk;
                    a(q, k) = -s * apk + c * aqk;
                }
                a(p, q) = Cplx(0.0, 0.0);
                a(q, p) = Cplx(0.0, 0.0);
                for (std::size_t k = 0; k < n; ++k) {
                    const Cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp + s * vkq;
                    v(k, q) = -std::conj(s) * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenSystem es{std::vector<double>(n), Matrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        es.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) es.vectors(i, k) = v(i, order[k]);
    }
    return es;
}

inline std::vector<double> hermitian_eigenvalues(const Matrix& m) {
    return hermitian_eigensystem(m).values;
}

inline double min_eigenvalue(const Matrix& m) {
    return hermitian_eigenvalues(m).front();
}

// ---------------------------------------------------------------------------
// Quantum value types.
// ---------------------------------------------------------------------------

class StateVector {
public:
    explicit StateVector(std::vector<Cplx> amps) : amps_(std::move(amps)) {
        if (amps_.empty()) throw std::invalid_argument("StateVector: empty");
        if (amps_.size() > kMaxDim) throw std::invalid_argument("StateVector: dimension above cap");
        double n2 = 0.0;
        for (Cplx z : amps_) {
            if (!finite(z)) throw std::invalid_argument("StateVector: non-finite amplitude");
            n2 += std::norm(z);
        }
        if (std::abs(n2 - 1.0) > kValidationTol)
            throw std::invalid_argument("StateVector: not normalized (|norm^2 - 1| = " +
                                        std::to_string(std::abs(n2 - 1.0)) + ")");
    }

    static StateVector basis(std::size_t dim, std::size_t index) {
        if (index >= dim) throw std::invalid_argument("StateVector::basis: index out of range");
        std::vector<Cplx> a(dim, Cplx(0.0, 0.0));
        a[index] = Cplx(1.0, 0.0);
        return StateVector(std::move(a));
    }

    std::size_t dim() const { return amps_.size(); }
    Cplx operator[](std::size_t i) const { return amps_[i]; }
    std::span<const Cplx> amps() const { return amps_; }

private:
    std::vector<Cplx> amps_;
};

inline Cplx inner(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("inner: dimension mismatch");
    Cplx s(0.0, 0.0);
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

class Unitary {
public:
    explicit Unitary(Matrix m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols()) throw std::invalid_argument("Unitary: matrix not square");
        const Matrix gram = m_.dagger() * m_;
        const double defect = max_abs_diff(gram, Matrix::identity(m_.rows()));
        if (defect > kValidationTol)
            throw std::invalid_argument("Unitary: U^dagger U != I (defect " +
                                        std::to_string(defect) + ")");
    }

    std::size_t dim() const { return m_.rows(); }
    const Matrix& mat() const { return m_; }
    Cplx operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

private:
    Matrix m_;
};

class DensityMatrix {
public:
    explicit DensityMatrix(Matrix m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols()) throw std::invalid_argument("DensityMatrix: matrix not square");
        if (hermiticity_defect(m_) > kValidationTol)
            throw std::invalid_argument("DensityMatrix: not Hermitian");
        if (std::abs(m_.trace() - Cplx(1.0, 0.0)) > kValidationTol)
            throw std::invalid_argument("DensityMatrix: trace != 1");
        if (min_eigenvalue(m_) < -kValidationTol)
            throw std::invalid_argument("DensityMatrix: not positive semidefinite");
    }

    static DensityMatrix maximally_mixed(std::size_t dim) {
        Matrix m = Matrix::identity(dim);
        m *= Cplx(1.0 / static_cast<double>(dim), 0.0);
        return DensityMatrix(std::move(m));
    }

    std::size_t dim() const { return m_.rows(); }
    const Matrix& mat() const { return m_; }
    Cplx operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

private:
    Matrix m_;
};

// A CPTP map, stored either as a Kraus set {K_i} with sum K_i^dagger K_i = I
// or as a convex combination of unitary conjugations {(w_i, U_i)} — the form
// mixed classical moves take.
class Channel {
public:
    static Channel from_kraus(std::vector<Matrix> kraus) {
        if (kraus.empty()) throw std::invalid_argument("Channel: empty Kraus set");
        const std::size_t d = kraus.front().rows();
        Matrix sum(d, d);
        for (const Matrix& k : kraus) {
            if (k.rows() != d || k.cols() != d)
                throw std::invalid_argument("Channel: Kraus operators must be square with equal dims");
            sum += k.dagger() * k;
        }
        if (max_abs_diff(sum, Matrix::identity(d)) > kValidationTol)
            throw std::invalid_argument("Channel: completeness violated (sum K^dagger K != I)");
        Channel ch;
        ch.kraus_ = std::move(kraus);
        return ch;
    }

    static Channel from_convex(std::vector<std::pair<double, Unitary>> parts) {
        if (parts.empty()) throw std::invalid_argument("Channel: empty convex combination");
        const std::size_t d = parts.front().second.dim();
        double total = 0.0;
        for (const auto& [w, u] : parts) {
            if (!(w >= -1e-12)) throw std::invalid_argument("Channel: negative convex weight");
            if (u.dim() != d) throw std::invalid_argument("Channel: mixed dims in convex combination");
            total += w;
        }
        if (std::abs(total - 1.0) > 1e-12)
            throw std::invalid_argument("Channel: convex weights do not sum to 1");
        Channel ch;
        ch.convex_ = std::move(parts);
        return ch;
    }

    bool is_convex() const { return !convex_.empty(); }
    std::size_t dim() const { return is_convex() ? convex_.front().second.dim() : kraus_.front().rows(); }
    std::span<const Matrix> kraus() const { return kraus_; }
    std::span<const std::pair<double, Unitary>> convex_parts() const { return convex_; }

private:
    Channel() = default;
    std::vector<Matrix> kraus_;
    std::vector<std::pair<double, Unitary>> convex_;
};

// ---------------------------------------------------------------------------
// Standard gates.
// ---------------------------------------------------------------------------

inline Unitary identity_gate(std::size_t dim) { return Unitary(Matrix::identity(dim)); }

// Spin flip F (Pauli X): |U> <-> |D>.
inline Unitary flip_gate() {
    Matrix m(2, 2);
    m(0, 1) = Cplx(1.0, 0.0);
    m(1, 0) = Cplx(1.0, 0.0);
    return Unitary(std::move(m));
}

// No-flip N: the 2x2 identity.
inline Unitary noflip_gate() { return identity_gate(2); }

inline Unitary hadamard_gate() {
    const double r = 1.0 / std::sqrt(2.0);
    Matrix m(2, 2);
    m(0, 0) = r;
    m(0, 1) = r;
    m(1, 0) = r;
    m(1, 1) = -r;
    return Unitary(std::move(m));
}

// Two-qubit SWAP: |ab> -> |ba>.
inline Unitary swap_gate() {
    Matrix m(4, 4);
    m(0, 0) = 1.0;
    m(1, 2) = 1.0;
    m(2, 1) = 1.0;
    m(3, 3) = 1.0;
    return Unitary(std::move(m));
}

// ---------------------------------------------------------------------------
// Operations.
// ---------------------------------------------------------------------------

// |psi><psi|
inline DensityMatrix density_from_pure(const StateVector& psi) {
    const std::size_t d = psi.dim();
    Matrix m(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, j) = psi[i] * std::conj(psi[j]);
    return DensityMatrix(std::move(m));
}

// U rho U^dagger
inline DensityMatrix apply_unitary(const DensityMatrix& rho, const Unitary& u) {
    if (rho.dim() != u.dim()) throw std::invalid_argument("apply_unitary: dimension mismatch");
    return DensityMatrix(u.mat() * rho.mat() * u.mat().dagger());
}

// sum_i K_i rho K_i^dagger, or the convex combination of conjugations.
inline DensityMatrix apply_channel(const DensityMatrix& rho, const Channel& ch) {
    if (rho.dim() != ch.dim()) throw std::invalid_argument("apply_channel: dimension mismatch");
    Matrix acc(rho.dim(), rho.dim());
    if (ch.is_convex()) {
        for (const auto& [w, u] : ch.convex_parts()) {
            if (w == 0.0) continue;
            acc += Cplx(w, 0.0) * (u.mat() * rho.mat() * u.mat().dagger());
        }
    } else {
        for (const Matrix& k : ch.kraus()) acc += k * rho.mat() * k.dagger();
    }
    return DensityMatrix(std::move(acc));
}

inline StateVector tensor(const StateVector& a, const StateVector& b) {
    std::vector<Cplx> out(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
    return StateVector(std::move(out));
}

inline Unitary tensor(const Unitary& a, const Unitary& b) { return Unitary(kron(a.mat(), b.mat())); }

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    return DensityMatrix(kron(a.mat(), b.mat()));
}

// Reduced density matrix over subsystem `keep`; `dims` lists the subsystem
// dimensions most-significant first and must multiply to rho.dim().
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::size_t keep,
                                   const std::vector<std::size_t>& dims) {
    if (dims.empty()) throw std::invalid_argument("partial_trace: empty dims");
    if (keep >= dims.size()) throw std::invalid_argument("partial_trace: keep index out of range");
    std::size_t total = 1;
    for (std::size_t d : dims) {
        if (d == 0) throw std::invalid_argument("partial_trace: zero subsystem dim");
        total *= d;
    }
    if (total != rho.dim())
        throw std::invalid_argument("partial_trace: dims inconsistent with matrix dimension");

    // Strides of each subsystem in the flat index, most-significant first.
    std::vector<std::size_t> stride(dims.size());
    std::size_t s = 1;
    for (std::size_t k = dims.size(); k-- > 0;) {
        stride[k] = s;
        s *= dims[k];
    }

    const std::size_t dk = dims[keep];
    const std::size_t rest = total / dk;
    Matrix red(dk, dk);
    // Enumerate the complement's joint index, then the kept row/col indices.
    for (std::size_t r = 0; r < rest; ++r) {
        // Expand r into a flat base index with the kept subsystem at 0.
        std::size_t base = 0, rr = r;
        for (std::size_t k = dims.size(); k-- > 0;) {
            if (k == keep) continue;
            base += (rr % dims[k]) * stride[k];
            rr /= dims[k];
        }
        for (std::size_t a = 0; a < dk; ++a)
            for (std::size_t b = 0; b < dk; ++b)
                red(a, b) += rho(base + a * stride[keep], base + b * stride[keep]);
    }
    return DensityMatrix(std::move(red));
}

// Computational-basis outcome probabilities: the real diagonal, clamped into
// [0,1] when within tolerance of the boundary. Out-of-tolerance values are
// bugs, not rounding, and raise.
inline std::vector<double> measure_probs(const DensityMatrix& rho) {
    std::vector<double> p(rho.dim());
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        double v = rho(i, i).real();
        if (v < -kValidationTol || v > 1.0 + kValidationTol)
            throw std::invalid_argument("measure_probs: diagonal entry outside [0,1] tolerance");
        p[i] = std::clamp(v, 0.0, 1.0);
    }
    return p;
}

// <psi| rho |psi>
inline double projective_overlap(const DensityMatrix& rho, const StateVector& psi) {
    if (rho.dim() != psi.dim()) throw std::invalid_argument("projective_overlap: dimension mismatch");
    Cplx acc(0.0, 0.0);
    for (std::size_t i = 0; i < rho.dim(); ++i)
        for (std::size_t j = 0; j < rho.dim(); ++j) acc += std::conj(psi[i]) * rho(i, j) * psi[j];
    const double v = acc.real();
    if (std::abs(acc.imag()) > kValidationTol || v < -kValidationTol || v > 1.0 + kValidationTol)
        throw std::invalid_argument("projective_overlap: value outside [0,1] tolerance");
    return std::clamp(v, 0.0, 1.0);
}

// One-control gate: identity when the control qubit is |0>, `target` when it
// is |I>. The control is the most-significant qubit of the result.
inline Unitary controlled_gate(const Unitary& target) {
    const std::size_t d = target.dim();
    Matrix m(2 * d, 2 * d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = Cplx(1.0, 0.0);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(d + i, d + j) = target(i, j);
    return Unitary(std::move(m));
}

}  // namespace qgames::qcore
