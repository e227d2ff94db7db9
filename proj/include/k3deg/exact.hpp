#pragma once

// Exact dense linear algebra over arbitrary-precision integers and rationals.
//
// Everything in this header is exact: integer matrices use GMP integers,
// rational matrices use GMP rationals, and no algorithm ever rounds.  The
// matrices involved are small (at most a few dozen rows), so the algorithms
// favour clarity and well-controlled intermediate growth over asymptotics.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace k3deg {

using Int = mpz_class;
using Rat = mpq_class;

// Canonicalized rational from a numerator/denominator pair.
Rat make_rat(const Int& num, const Int& den);

// Thrown by express_in_basis when a vector lies outside the span.
struct NotInSpan : std::runtime_error {
    explicit NotInSpan(const std::string& what) : std::runtime_error(what) {}
};

class RatMat;

// Dense row-major integer matrix.
class IntMat {
  public:
    IntMat() = default;
    IntMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    IntMat(std::initializer_list<std::initializer_list<long>> rows);

    static IntMat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const IntMat&) const = default;

    IntMat transposed() const;
    bool is_zero() const;
    bool is_square() const { return rows_ == cols_; }

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);

    // Columns of `other` appended on the right.
    IntMat hstack(const IntMat& other) const;
    // The matrix made of the listed columns, in the given order.
    IntMat select_cols(const std::vector<std::size_t>& idx) const;
    std::vector<Int> col(std::size_t j) const;

    std::string to_string() const;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

IntMat operator*(const IntMat& a, const IntMat& b);
std::vector<Int> operator*(const IntMat& a, const std::vector<Int>& v);

// Dense row-major rational matrix.
class RatMat {
  public:
    RatMat() = default;
    RatMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    explicit RatMat(const IntMat& m);

    static RatMat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const RatMat&) const = default;

    RatMat transposed() const;
    bool is_integral() const;
    // Requires is_integral(); converts entrywise.
    IntMat to_int() const;

    IntMat scaled_integral(Int& denominator_out) const;  // self == result / denominator

    RatMat hstack(const RatMat& other) const;
    std::vector<Rat> col(std::size_t j) const;

    std::string to_string() const;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

RatMat operator*(const RatMat& a, const RatMat& b);
std::vector<Rat> operator*(const RatMat& a, const std::vector<Rat>& v);

// ---------------------------------------------------------------------------
// Smith normal form and consequences
// ---------------------------------------------------------------------------

// u * a * v = d with u, v unimodular and d diagonal, d_1 | d_2 | ... | d_r >= 1
// followed by zeros (zero diagonal entries always come last).
struct SnfResult {
    IntMat u, d, v;
};

SnfResult snf(const IntMat& a);

// Nonzero diagonal entries of the Smith form (the invariant factors).
std::vector<Int> snf_diagonal(const IntMat& a);

std::size_t rank_int(const IntMat& a);

// Invariant factors > 1 of coker(gram): the discriminant group of a
// nondegenerate integral Gram matrix, as a cyclic decomposition d_1 | d_2 | ...
std::vector<Int> discriminant_invariants(const IntMat& gram);

// Determinant by fraction-free (Bareiss) elimination.
Int det(const IntMat& a);

// Exact inverse of a unimodular integer matrix; throws std::invalid_argument
// if the inverse is not integral.
IntMat unimodular_inverse(const IntMat& u);

// Columns form a saturated basis of {x in Z^n : a x = 0}.
IntMat kernel_basis(const IntMat& a);

// Basis (columns) of the saturation of the column span of b inside Z^rows:
// span_Q(cols b) ∩ Z^rows.  A zero or empty input yields a rows x 0 matrix.
IntMat saturate_columns(const IntMat& b);

// Every column of `sub` lies in the Z-span of the columns of `sup`.
bool columns_contained(const IntMat& sub, const IntMat& sup);

// Equality of column spans over Z.
bool same_column_span(const IntMat& a, const IntMat& b);

// ---------------------------------------------------------------------------
// Rational solving
// ---------------------------------------------------------------------------

// Solve a x = b exactly over Q for each column of b (general shape, may be
// under/overdetermined); nullopt if any system is inconsistent.  Free
// variables are set to zero.
std::optional<RatMat> try_solve(const RatMat& a, const RatMat& b);

// Coordinates of each column of `vectors` in the given basis columns;
// throws NotInSpan if a column is outside the span.
RatMat express_in_basis(const RatMat& basis_cols, const RatMat& vectors);

// ---------------------------------------------------------------------------
// Quadratic-form utilities
// ---------------------------------------------------------------------------

struct Signature {
    std::size_t pos = 0, neg = 0, zero = 0;
    bool operator==(const Signature&) const = default;
};

// Signature of a symmetric rational matrix by exact symmetric reduction.
Signature rational_signature(const RatMat& g);
Signature rational_signature(const IntMat& g);

// basis_cols^T * g * basis_cols (the Gram matrix of a set of column vectors
// with respect to the ambient symmetric form g).
RatMat gram_in_basis(const RatMat& g, const RatMat& basis_cols);

}  // namespace k3deg
