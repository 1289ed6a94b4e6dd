#pragma once

#include <gmpxx.h>

#include <cassert>
#include <optional>
#include <string>
#include <vector>

namespace fga {

// Coefficient field: the rationals (p == 0) or the prime field F_p.
struct Field {
  long p = 0;

  bool is_rational() const { return p == 0; }
  bool operator==(const Field&) const = default;
  std::string name() const { return p == 0 ? "Q" : "F" + std::to_string(p); }

  static Field rationals() { return Field{0}; }
  static Field prime(long p) {
    assert(p >= 2);
    return Field{p};
  }
};

// Element of Q or F_p. Values of F_p are kept reduced to [0, p).
// Arithmetic between elements of different fields is a programming error.
class Scalar {
 public:
  Scalar() : p_(0), v_(0) {}
  Scalar(const Field& k, long n) : p_(k.p), v_(n) { reduce(); }
  Scalar(const Field& k, const mpq_class& v) : p_(k.p), v_(v) { reduce(); }

  static Scalar zero(const Field& k) { return Scalar(k, 0); }
  static Scalar one(const Field& k) { return Scalar(k, 1); }
  // Accepts "n" or "n/d" with optional sign.
  static Scalar parse(const Field& k, const std::string& s);

  Field field() const { return Field{p_}; }
  const mpq_class& value() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar inverse() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  bool operator==(const Scalar& o) const {
    assert(p_ == o.p_);
    return v_ == o.v_;
  }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // Total order used only for canonical/deterministic output.
  bool operator<(const Scalar& o) const {
    assert(p_ == o.p_);
    return v_ < o.v_;
  }

  std::string str() const;

 private:
  void reduce();

  long p_;
  mpq_class v_;
};

// true iff x^2 - l1 x - l2 has no root in the field.
bool quadratic_is_irreducible(const Field& k, const Scalar& l1, const Scalar& l2);

// Univariate polynomial, coefficients stored low degree first with no
// trailing zeros; the zero polynomial has an empty coefficient list.
class Poly {
 public:
  explicit Poly(const Field& k) : k_(k) {}
  Poly(const Field& k, std::vector<Scalar> coeffs) : k_(k), c_(std::move(coeffs)) { trim(); }

  static Poly zero(const Field& k) { return Poly(k); }
  static Poly constant(const Scalar& c) { return Poly(c.field(), {c}); }
  static Poly x(const Field& k) { return Poly(k, {Scalar::zero(k), Scalar::one(k)}); }
  // Integer-coefficient terms in x, e.g. "x^3-x^2-2x+1", "x-2", "2".
  static Poly parse(const Field& k, const std::string& s);

  Field field() const { return k_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  Scalar coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Scalar::zero(k_);
  }
  Scalar lead() const {
    assert(!c_.empty());
    return c_.back();
  }
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Scalar& s) const;
  bool operator==(const Poly& o) const { return k_ == o.k_ && c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // Euclidean division by a nonzero divisor: *this = q * d + r, deg r < deg d.
  std::pair<Poly, Poly> divmod(const Poly& d) const;
  Poly monic() const;
  Poly pow(int n) const;
  Scalar eval(const Scalar& at) const;
  static Poly gcd(const Poly& a, const Poly& b);  // monic gcd

  std::string str() const;  // "x^2 - 2" style

  // Irreducibility with an honest undetermined state: degree <= 3 is decided
  // by root search everywhere; over F_p any degree is decided by trial
  // division; over Q of degree >= 4 the result may be Unknown.
  enum class Irred { Yes, No, Unknown };
  Irred irreducible() const;

  // If p = q^n with q monic irreducible (n >= 1), returns (q, n).
  // Over Q with deg q >= 4 the irreducibility of q may be asserted only.
  std::optional<std::pair<Poly, int>> prime_power() const;

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  Field k_;
  std::vector<Scalar> c_;
};

// Dense matrix over Q or F_p, row-major.
class Matrix {
 public:
  Matrix() : k_(Field::rationals()), rows_(0), cols_(0) {}
  Matrix(const Field& k, int rows, int cols)
      : k_(k), rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, Scalar::zero(k)) {}

  static Matrix identity(const Field& k, int n);
  static Matrix from_rows(const Field& k, const std::vector<std::vector<long>>& rows);
  static Matrix companion(const Poly& p);  // p monic, deg >= 1
  static Matrix block_diag(const Matrix& a, const Matrix& b);
  static Matrix kronecker(const Matrix& a, const Matrix& b);

  Field field() const { return k_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const Scalar& at(int i, int j) const {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return a_[static_cast<size_t>(i) * cols_ + j];
  }
  void set(int i, int j, const Scalar& v) {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    assert(v.field() == k_);
    a_[static_cast<size_t>(i) * cols_ + j] = v;
  }

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator*(const Scalar& s) const;
  bool operator==(const Matrix& o) const {
    return k_ == o.k_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix transpose() const;
  Matrix pow(int n) const;
  bool is_zero() const;
  bool is_identity() const;

  // Gaussian elimination. rank() is exact; rref returns the reduced row
  // echelon form together with the pivot columns.
  int rank() const;
  Matrix rref(std::vector<int>* pivot_cols = nullptr) const;

  // Basis of {x : A x = 0} as columns, free variables set to 1 in reduced
  // column-echelon order (deterministic).
  Matrix kernel() const;

  // One solution of A x = b (b may have several columns), if consistent.
  std::optional<Matrix> solve(const Matrix& b) const;

  std::optional<Matrix> inverse() const;
  Scalar det() const;

  // Monic characteristic polynomial det(xI - A) (division-free Berkowitz,
  // valid over any field including F_2).
  Poly char_poly() const;

  // Nontrivial invariant factors of xI - A (Smith normal form over K[x]),
  // monic, each dividing the next; their product is char_poly().
  std::vector<Poly> invariant_factors() const;

  std::string str() const;

 private:
  Field k_;
  int rows_, cols_;
  std::vector<Scalar> a_;
};

// Conjugacy over the field, decided by comparing invariant factors.
bool similar(const Matrix& a, const Matrix& b);

}  // namespace fga
