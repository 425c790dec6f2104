#pragma once

#include <climits>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace homtop {

using bigint = boost::multiprecision::cpp_int;

// Dense exact integer matrix, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("matrix: negative shape");
    }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    long long& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    long long at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<long long> a_;
};

namespace detail {

struct Overflow {};

// int64 with trapping arithmetic; any wraparound raises Overflow so the
// caller can redo the computation in arbitrary precision.
struct C64 {
    long long v = 0;
    C64() = default;
    C64(long long x) : v(x) {}
    friend C64 operator+(C64 a, C64 b) {
        long long r;
        if (__builtin_add_overflow(a.v, b.v, &r)) throw Overflow{};
        return r;
    }
    friend C64 operator-(C64 a, C64 b) {
        long long r;
        if (__builtin_sub_overflow(a.v, b.v, &r)) throw Overflow{};
        return r;
    }
    friend C64 operator*(C64 a, C64 b) {
        long long r;
        if (__builtin_mul_overflow(a.v, b.v, &r)) throw Overflow{};
        return r;
    }
    friend C64 operator/(C64 a, C64 b) {
        if (a.v == LLONG_MIN && b.v == -1) throw Overflow{};
        return a.v / b.v;
    }
    friend C64 operator%(C64 a, C64 b) {
        if (a.v == LLONG_MIN && b.v == -1) throw Overflow{};
        return a.v % b.v;
    }
    friend bool operator==(C64 a, C64 b) { return a.v == b.v; }
    friend bool operator!=(C64 a, C64 b) { return a.v != b.v; }
    friend bool operator<(C64 a, C64 b) { return a.v < b.v; }
};

inline C64 abs_val(C64 a) {
    if (a.v == LLONG_MIN) throw Overflow{};
    return a.v < 0 ? C64{-a.v} : a;
}
inline bigint abs_val(const bigint& a) { return a < 0 ? bigint(-a) : a; }

inline bool is_zero(C64 a) { return a.v == 0; }
inline bool is_zero(const bigint& a) { return a.is_zero(); }

// In-place Smith elimination. Returns the nonzero diagonal entries
// (made positive), forming a divisibility chain.
template <class T>
std::vector<T> snf_core(std::vector<std::vector<T>>& a, int rows, int cols) {
    std::vector<T> factors;
    int s = 0;
    while (s < rows && s < cols) {
        // smallest-magnitude nonzero pivot in the remaining block
        int pi = -1, pj = -1;
        for (int i = s; i < rows; ++i)
            for (int j = s; j < cols; ++j)
                if (!is_zero(a[i][j]) &&
                    (pi == -1 || abs_val(a[i][j]) < abs_val(a[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
        if (pi == -1) break;
        std::swap(a[pi], a[s]);
        if (pj != s)
            for (int i = 0; i < rows; ++i) std::swap(a[i][pj], a[i][s]);

        bool settled = false;
        while (!settled) {
            settled = true;
            // clear column s; a nonzero remainder becomes the new, smaller pivot
            for (int i = s + 1; i < rows; ++i) {
                if (is_zero(a[i][s])) continue;
                T q = a[i][s] / a[s][s];
                for (int j = s; j < cols; ++j) a[i][j] = a[i][j] - q * a[s][j];
                if (!is_zero(a[i][s])) {
                    std::swap(a[i], a[s]);
                    settled = false;
                }
            }
            if (!settled) continue;
            // clear row s likewise
            for (int j = s + 1; j < cols; ++j) {
                if (is_zero(a[s][j])) continue;
                T q = a[s][j] / a[s][s];
                for (int i = s; i < rows; ++i) a[i][j] = a[i][j] - q * a[i][s];
                if (!is_zero(a[s][j])) {
                    for (int i = 0; i < rows; ++i) std::swap(a[i][j], a[i][s]);
                    settled = false;
                }
            }
            if (!settled) continue;
            // divisibility: fold a bad entry into row s and re-eliminate
            for (int i = s + 1; i < rows && settled; ++i)
                for (int j = s + 1; j < cols && settled; ++j)
                    if (!is_zero(a[i][j] % a[s][s])) {
                        for (int jj = s; jj < cols; ++jj) a[s][jj] = a[s][jj] + a[i][jj];
                        settled = false;
                    }
        }
        factors.push_back(abs_val(a[s][s]));
        ++s;
    }
    return factors;
}

}  // namespace detail

struct SmithResult {
    std::vector<bigint> factors;  // nonzero invariant factors, positive, d1 | d2 | ...
    int rank = 0;                 // == factors.size()
    bool promoted = false;        // int64 overflowed; redone in arbitrary precision
};

inline SmithResult smith_normal_form(const IntMatrix& m) {
    SmithResult res;
    try {
        std::vector<std::vector<detail::C64>> a(m.rows(), std::vector<detail::C64>(m.cols()));
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) a[i][j] = m.at(i, j);
        auto f = detail::snf_core(a, m.rows(), m.cols());
        for (auto x : f) res.factors.emplace_back(x.v);
    } catch (const detail::Overflow&) {
        std::vector<std::vector<bigint>> a(m.rows(), std::vector<bigint>(m.cols()));
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) a[i][j] = m.at(i, j);
        res.factors = detail::snf_core(a, m.rows(), m.cols());
        res.promoted = true;
    }
    res.rank = static_cast<int>(res.factors.size());
    for (std::size_t i = 0; i + 1 < res.factors.size(); ++i)
        if (res.factors[i + 1] % res.factors[i] != 0)
            throw std::logic_error("smith normal form: divisibility chain violated");
    return res;
}

}
