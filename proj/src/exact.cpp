#include "k3deg/exact.hpp"

#include <algorithm>
#include <sstream>

namespace k3deg {

Rat make_rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// ---------------------------------------------------------------------------
// IntMat
// ---------------------------------------------------------------------------

IntMat::IntMat(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    a_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw std::invalid_argument("ragged initializer");
        for (long x : row) a_.emplace_back(x);
    }
}

IntMat IntMat::identity(std::size_t n) {
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMat IntMat::transposed() const {
    IntMat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool IntMat::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Int& x) { return x == 0; });
}

void IntMat::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

void IntMat::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}

IntMat IntMat::hstack(const IntMat& other) const {
    if (rows_ != other.rows_) throw std::invalid_argument("hstack: row mismatch");
    IntMat out(rows_, cols_ + other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
        for (std::size_t j = 0; j < other.cols_; ++j) out(i, cols_ + j) = other(i, j);
    }
    return out;
}

IntMat IntMat::select_cols(const std::vector<std::size_t>& idx) const {
    IntMat out(rows_, idx.size());
    for (std::size_t c = 0; c < idx.size(); ++c)
        for (std::size_t i = 0; i < rows_; ++i) out(i, c) = (*this)(i, idx[c]);
    return out;
}

std::vector<Int> IntMat::col(std::size_t j) const {
    std::vector<Int> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

std::string IntMat::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "\n[" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
        os << "]";
    }
    return os.str();
}

IntMat operator*(const IntMat& a, const IntMat& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
    IntMat c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t t = 0; t < a.cols(); ++t) {
            const Int& x = a(i, t);
            if (x == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += x * b(t, j);
        }
    return c;
}

std::vector<Int> operator*(const IntMat& a, const std::vector<Int>& v) {
    if (a.cols() != v.size()) throw std::invalid_argument("matvec: shape mismatch");
    std::vector<Int> out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
    return out;
}

// ---------------------------------------------------------------------------
// RatMat
// ---------------------------------------------------------------------------

RatMat::RatMat(const IntMat& m) : rows_(m.rows()), cols_(m.cols()), a_(rows_ * cols_) {
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = m(i, j);
}

RatMat RatMat::identity(std::size_t n) {
    RatMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RatMat RatMat::transposed() const {
    RatMat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool RatMat::is_integral() const {
    return std::all_of(a_.begin(), a_.end(), [](const Rat& x) { return x.get_den() == 1; });
}

IntMat RatMat::to_int() const {
    IntMat out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            const Rat& x = (*this)(i, j);
            if (x.get_den() != 1) throw std::invalid_argument("to_int: matrix not integral");
            out(i, j) = x.get_num();
        }
    return out;
}

IntMat RatMat::scaled_integral(Int& denominator_out) const {
    Int den = 1;
    for (const Rat& x : a_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
    IntMat out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            Rat scaled = (*this)(i, j) * den;
            out(i, j) = scaled.get_num();
        }
    denominator_out = den;
    return out;
}

RatMat RatMat::hstack(const RatMat& other) const {
    if (rows_ != other.rows_) throw std::invalid_argument("hstack: row mismatch");
    RatMat out(rows_, cols_ + other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
        for (std::size_t j = 0; j < other.cols_; ++j) out(i, cols_ + j) = other(i, j);
    }
    return out;
}

std::vector<Rat> RatMat::col(std::size_t j) const {
    std::vector<Rat> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

std::string RatMat::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "\n[" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
        os << "]";
    }
    return os.str();
}

RatMat operator*(const RatMat& a, const RatMat& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
    RatMat c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t t = 0; t < a.cols(); ++t) {
            const Rat& x = a(i, t);
            if (x == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += x * b(t, j);
        }
    return c;
}

std::vector<Rat> operator*(const RatMat& a, const std::vector<Rat>& v) {
    if (a.cols() != v.size()) throw std::invalid_argument("matvec: shape mismatch");
    std::vector<Rat> out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
    return out;
}

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

namespace {

// q minimizing |a - q*b| (b != 0); keeps remainders at most |b|/2.
Int nearest_quotient(const Int& a, const Int& b) {
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (2 * abs(r) > abs(b)) q += 1;
    return q;
}

}  // namespace

SnfResult snf(const IntMat& a) {
    const std::size_t m = a.rows(), n = a.cols();
    IntMat d = a;
    IntMat u = IntMat::identity(m);
    IntMat v = IntMat::identity(n);

    // row_i -= q * row_j on d and u
    auto row_op = [&](std::size_t i, std::size_t j, const Int& q) {
        if (q == 0) return;
        for (std::size_t k = 0; k < n; ++k) d(i, k) -= q * d(j, k);
        for (std::size_t k = 0; k < m; ++k) u(i, k) -= q * u(j, k);
    };
    // col_i -= q * col_j on d and v
    auto col_op = [&](std::size_t i, std::size_t j, const Int& q) {
        if (q == 0) return;
        for (std::size_t k = 0; k < m; ++k) d(k, i) -= q * d(k, j);
        for (std::size_t k = 0; k < n; ++k) v(k, i) -= q * v(k, j);
    };

    std::size_t t = 0;
    while (t < std::min(m, n)) {
        for (;;) {
            // pivot: nonzero entry of least absolute value in d[t.., t..]
            bool found = false;
            std::size_t pi = 0, pj = 0;
            Int best;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    const Int& x = d(i, j);
                    if (x == 0) continue;
                    Int ax = abs(x);
                    if (!found || ax < best) {
                        found = true;
                        best = ax;
                        pi = i;
                        pj = j;
                    }
                }
            if (!found) return {u, d, v};  // trailing block is zero: finished
            if (pi != t) {
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
            }
            if (pj != t) {
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);
            }
            // one reduction pass over column t and row t
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i)
                if (d(i, t) != 0) {
                    row_op(i, t, nearest_quotient(d(i, t), d(t, t)));
                    if (d(i, t) != 0) clean = false;
                }
            for (std::size_t j = t + 1; j < n; ++j)
                if (d(t, j) != 0) {
                    col_op(j, t, nearest_quotient(d(t, j), d(t, t)));
                    if (d(t, j) != 0) clean = false;
                }
            if (!clean) continue;  // smaller remainders exist; re-find pivot
            // row/col t clear; enforce divisibility on the trailing block
            bool fixed = false;
            for (std::size_t i = t + 1; i < m && !fixed; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        row_op(t, i, Int(-1));  // pull the offending row in
                        fixed = true;
                        break;
                    }
            if (!fixed) break;
        }
        if (d(t, t) < 0) {
            for (std::size_t k = 0; k < n; ++k) d(t, k) = -d(t, k);
            for (std::size_t k = 0; k < m; ++k) u(t, k) = -u(t, k);
        }
        ++t;
    }
    return {u, d, v};
}

std::vector<Int> snf_diagonal(const IntMat& a) {
    SnfResult r = snf(a);
    std::vector<Int> out;
    const std::size_t lim = std::min(a.rows(), a.cols());
    for (std::size_t i = 0; i < lim; ++i)
        if (r.d(i, i) != 0) out.push_back(r.d(i, i));
    return out;
}

std::size_t rank_int(const IntMat& a) { return snf_diagonal(a).size(); }

std::vector<Int> discriminant_invariants(const IntMat& gram) {
    std::vector<Int> out;
    for (const Int& x : snf_diagonal(gram))
        if (x > 1) out.push_back(x);
    return out;
}

Int det(const IntMat& a) {
    if (!a.is_square()) throw std::invalid_argument("det: matrix not square");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMat m = a;
    int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            bool swapped = false;
            for (std::size_t i = k + 1; i < n; ++i)
                if (m(i, k) != 0) {
                    m.swap_rows(k, i);
                    sign = -sign;
                    swapped = true;
                    break;
                }
            if (!swapped) return 0;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

IntMat unimodular_inverse(const IntMat& u) {
    if (!u.is_square()) throw std::invalid_argument("unimodular_inverse: not square");
    auto x = try_solve(RatMat(u), RatMat::identity(u.rows()));
    if (!x || !x->is_integral())
        throw std::invalid_argument("unimodular_inverse: inverse not integral");
    return x->to_int();
}

IntMat kernel_basis(const IntMat& a) {
    const std::size_t m = a.rows(), n = a.cols();
    if (m == 0) return IntMat::identity(n);
    SnfResult r = snf(a);
    std::size_t rk = 0;
    for (std::size_t i = 0; i < std::min(m, n); ++i)
        if (r.d(i, i) != 0) ++rk;
    std::vector<std::size_t> idx;
    for (std::size_t j = rk; j < n; ++j) idx.push_back(j);
    return r.v.select_cols(idx);
}

IntMat saturate_columns(const IntMat& b) {
    const std::size_t m = b.rows();
    if (b.cols() == 0 || b.is_zero()) return IntMat(m, 0);
    SnfResult r = snf(b);
    std::size_t rk = 0;
    for (std::size_t i = 0; i < std::min(m, b.cols()); ++i)
        if (r.d(i, i) != 0) ++rk;
    IntMat uinv = unimodular_inverse(r.u);
    std::vector<std::size_t> idx(rk);
    for (std::size_t j = 0; j < rk; ++j) idx[j] = j;
    return uinv.select_cols(idx);
}

bool columns_contained(const IntMat& sub, const IntMat& sup) {
    const std::size_t m = sup.rows();
    if (sub.rows() != m) throw std::invalid_argument("columns_contained: row mismatch");
    if (sub.cols() == 0) return true;
    SnfResult r = snf(sup);
    std::vector<Int> diag(m, 0);
    for (std::size_t i = 0; i < std::min(m, sup.cols()); ++i) diag[i] = r.d(i, i);
    for (std::size_t c = 0; c < sub.cols(); ++c) {
        std::vector<Int> y = r.u * sub.col(c);  // solve d z = u x
        for (std::size_t i = 0; i < m; ++i) {
            if (diag[i] == 0) {
                if (y[i] != 0) return false;
            } else if (y[i] % diag[i] != 0) {
                return false;
            }
        }
    }
    return true;
}

bool same_column_span(const IntMat& a, const IntMat& b) {
    if (a.rows() != b.rows()) return false;
    return columns_contained(a, b) && columns_contained(b, a);
}

// ---------------------------------------------------------------------------
// Rational solving
// ---------------------------------------------------------------------------

std::optional<RatMat> try_solve(const RatMat& a, const RatMat& b) {
    const std::size_t m = a.rows(), n = a.cols(), k = b.cols();
    if (b.rows() != m) throw std::invalid_argument("try_solve: shape mismatch");
    RatMat w = a.hstack(b);
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t pr = row;
        while (pr < m && w(pr, col) == 0) ++pr;
        if (pr == m) continue;
        if (pr != row)
            for (std::size_t j = 0; j < n + k; ++j) std::swap(w(row, j), w(pr, j));
        Rat pv = w(row, col);
        for (std::size_t j = 0; j < n + k; ++j) w(row, j) /= pv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || w(i, col) == 0) continue;
            Rat f = w(i, col);
            for (std::size_t j = 0; j < n + k; ++j) w(i, j) -= f * w(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    for (std::size_t i = row; i < m; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (w(i, n + j) != 0) return std::nullopt;
    RatMat x(n, k);
    for (std::size_t r = 0; r < pivots.size(); ++r)
        for (std::size_t j = 0; j < k; ++j) x(pivots[r], j) = w(r, n + j);
    return x;
}

RatMat express_in_basis(const RatMat& basis_cols, const RatMat& vectors) {
    auto x = try_solve(basis_cols, vectors);
    if (!x) throw NotInSpan("vector does not lie in the span of the basis");
    return *x;
}

// ---------------------------------------------------------------------------
// Quadratic-form utilities
// ---------------------------------------------------------------------------

Signature rational_signature(const RatMat& g) {
    if (!g.is_square()) throw std::invalid_argument("rational_signature: not square");
    const std::size_t n = g.rows();
    RatMat w = g;
    std::vector<bool> used(n, false);
    Signature sig;
    for (;;) {
        // a nonzero diagonal pivot among unused indices
        std::size_t p = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!used[i] && w(i, i) != 0) {
                p = i;
                break;
            }
        if (p == n) {
            // merge a nonzero off-diagonal pair to create one, if any
            std::size_t qi = n, qj = n;
            for (std::size_t i = 0; i < n && qi == n; ++i) {
                if (used[i]) continue;
                for (std::size_t j = 0; j < n; ++j)
                    if (!used[j] && i != j && w(i, j) != 0) {
                        qi = i;
                        qj = j;
                        break;
                    }
            }
            if (qi == n) {
                for (std::size_t i = 0; i < n; ++i)
                    if (!used[i]) ++sig.zero;
                return sig;
            }
            for (std::size_t k = 0; k < n; ++k) w(qi, k) += w(qj, k);
            for (std::size_t k = 0; k < n; ++k) w(k, qi) += w(k, qj);
            continue;
        }
        Rat dpp = w(p, p);
        if (dpp > 0)
            ++sig.pos;
        else
            ++sig.neg;
        used[p] = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == p || used[i] || w(i, p) == 0) continue;
            Rat f = w(i, p) / dpp;
            for (std::size_t k = 0; k < n; ++k) w(i, k) -= f * w(p, k);
            for (std::size_t k = 0; k < n; ++k) w(k, i) -= f * w(k, p);
        }
    }
}

Signature rational_signature(const IntMat& g) { return rational_signature(RatMat(g)); }

RatMat gram_in_basis(const RatMat& g, const RatMat& basis_cols) {
    return basis_cols.transposed() * g * basis_cols;
}

}  // namespace k3deg
