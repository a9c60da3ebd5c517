#include "actheta/bigint.hpp"

#include <algorithm>
#include <cassert>

namespace actheta {

std::vector<std::pair<Int, int>> factorize(Int n) {
    std::vector<std::pair<Int, int>> out;
    if (n < 0) n = -n;
    if (n <= 1) return out;
    for (Int d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (divides(d, n)) {
            int e = 0;
            while (divides(d, n)) {
                n = divexact(n, d);
                ++e;
            }
            out.push_back({d, e});
        }
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

std::vector<long> divisors(long n) {
    std::vector<long> out;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d != n / d) out.push_back(n / d);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

long euler_phi(long n) {
    long r = n;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            r -= r / d;
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) r -= r / n;
    return r;
}

std::vector<long> primes_up_to(long n) {
    std::vector<bool> sieve(n + 1, true);
    std::vector<long> out;
    for (long i = 2; i <= n; ++i) {
        if (sieve[i]) {
            out.push_back(i);
            for (long j = 2 * i; j <= n; j += i) sieve[j] = false;
        }
    }
    return out;
}

int valuation(Int n, const Int& p) {
    assert(n != 0);
    int v = 0;
    while (divides(p, n)) {
        n = divexact(n, p);
        ++v;
    }
    return v;
}

namespace {

using Mat = std::vector<std::vector<Int>>;

Mat identity(size_t n) {
    Mat I(n, std::vector<Int>(n, 0));
    for (size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

void swap_rows(Mat& A, Mat& U, size_t i, size_t j) {
    std::swap(A[i], A[j]);
    std::swap(U[i], U[j]);
}

void swap_cols(Mat& A, Mat& V, size_t i, size_t j) {
    for (auto& row : A) std::swap(row[i], row[j]);
    for (auto& row : V) std::swap(row[i], row[j]);
}

void add_row(Mat& A, Mat& U, size_t dst, size_t src, const Int& c) {
    for (size_t k = 0; k < A[dst].size(); ++k) A[dst][k] += c * A[src][k];
    for (size_t k = 0; k < U[dst].size(); ++k) U[dst][k] += c * U[src][k];
}

void add_col(Mat& A, Mat& V, size_t dst, size_t src, const Int& c) {
    for (auto& row : A) row[dst] += c * row[src];
    for (auto& row : V) row[dst] += c * row[src];
}

void negate_row(Mat& A, Mat& U, size_t i) {
    for (auto& x : A[i]) x = -x;
    for (auto& x : U[i]) x = -x;
}

}  // namespace

namespace {

// Diagonalize A in place by unimodular row/column operations starting at index t0.
void diagonalize(Mat& A, Mat& U, Mat& V, size_t t0) {
    size_t m = A.size();
    size_t n = m ? A[0].size() : 0;
    size_t t = t0;
    while (t < m && t < n) {
        // locate a nonzero pivot
        size_t pi = t, pj = t;
        bool found = false;
        Int best = 0;
        for (size_t i = t; i < m; ++i)
            for (size_t j = t; j < n; ++j)
                if (A[i][j] != 0) {
                    Int a = abs(A[i][j]);
                    if (!found || a < best) {
                        best = a;
                        pi = i;
                        pj = j;
                        found = true;
                    }
                }
        if (!found) break;
        swap_rows(A, U, t, pi);
        swap_cols(A, V, t, pj);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = t + 1; i < m; ++i) {
                if (A[i][t] != 0) {
                    Int q = A[i][t] / A[t][t];
                    add_row(A, U, i, t, -q);
                    if (A[i][t] != 0) {
                        swap_rows(A, U, t, i);
                        clean = false;
                    }
                }
            }
            for (size_t j = t + 1; j < n; ++j) {
                if (A[t][j] != 0) {
                    Int q = A[t][j] / A[t][t];
                    add_col(A, V, j, t, -q);
                    if (A[t][j] != 0) {
                        swap_cols(A, V, t, j);
                        clean = false;
                    }
                }
            }
        }
        ++t;
    }
}

}  // namespace

SmithResult smith_normal_form(Mat A) {
    size_t m = A.size();
    size_t n = m ? A[0].size() : 0;
    Mat U = identity(m), V = identity(n);
    diagonalize(A, U, V, 0);
    size_t r = std::min(m, n);
    // enforce the divisibility chain d_i | d_j for i < j
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < r; ++i) {
            for (size_t j = i + 1; j < r; ++j) {
                if (A[i][i] != 0 && A[j][j] % A[i][i] != 0) {
                    add_col(A, V, i, j, 1);
                    diagonalize(A, U, V, i);
                    changed = true;
                }
            }
        }
    }
    for (size_t i = 0; i < r; ++i)
        if (A[i][i] < 0) negate_row(A, U, i);
    return {A, U, V};
}

std::optional<std::vector<Rat>> solve_linear(std::vector<std::vector<Rat>> A, std::vector<Rat> b) {
    size_t m = A.size();
    size_t n = m ? A[0].size() : 0;
    std::vector<size_t> pivot_col;
    size_t row = 0;
    for (size_t col = 0; col < n && row < m; ++col) {
        size_t sel = row;
        while (sel < m && A[sel][col] == 0) ++sel;
        if (sel == m) continue;
        std::swap(A[sel], A[row]);
        std::swap(b[sel], b[row]);
        Rat inv = 1 / A[row][col];
        for (size_t k = col; k < n; ++k) A[row][k] *= inv;
        b[row] *= inv;
        for (size_t i = 0; i < m; ++i) {
            if (i != row && A[i][col] != 0) {
                Rat f = A[i][col];
                for (size_t k = col; k < n; ++k) A[i][k] -= f * A[row][k];
                b[i] -= f * b[row];
            }
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (size_t i = row; i < m; ++i)
        if (b[i] != 0) return std::nullopt;
    std::vector<Rat> x(n, Rat(0));
    for (size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = b[i];
    return x;
}

std::optional<std::vector<Int>> solve_linear_integer(const std::vector<std::vector<Int>>& A,
                                                     const std::vector<Int>& b) {
    size_t rows = A.size(), cols = rows ? A[0].size() : 0;
    SmithResult snf = smith_normal_form(A);
    // D y = U b, then x = V y
    std::vector<Int> ub(rows, Int(0));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < rows; ++j) ub[i] += snf.U[i][j] * b[j];
    std::vector<Int> y(cols, Int(0));
    for (size_t i = 0; i < rows; ++i) {
        Int d = (i < cols) ? snf.D[i][i] : Int(0);
        if (d == 0) {
            if (ub[i] != 0) return std::nullopt;
        } else {
            if (ub[i] % d != 0) return std::nullopt;
            y[i] = ub[i] / d;
        }
    }
    std::vector<Int> x(cols, Int(0));
    for (size_t i = 0; i < cols; ++i)
        for (size_t j = 0; j < cols; ++j) x[i] += snf.V[i][j] * y[j];
    return x;
}

}  // namespace actheta

