#include "fga/field.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace fga {

void Scalar::reduce() {
  v_.canonicalize();
  if (p_ != 0) {
    // Reduce a rational value into F_p: numerator times inverse denominator.
    mpz_class num = v_.get_num(), den = v_.get_den(), p(p_);
    mpz_class r;
    mpz_mod(r.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
    if (den != 1) {
      mpz_class dinv;
      if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
        throw std::domain_error("denominator not invertible mod p");
      r = (r * dinv) % p;
    }
    if (r < 0) r += p;
    v_ = mpq_class(r);
  }
}

Scalar Scalar::parse(const Field& k, const std::string& s) {
  mpq_class v;
  if (v.set_str(s, 10) != 0) throw std::invalid_argument("bad scalar: " + s);
  return Scalar(k, v);
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.v_ = -r.v_;
  r.reduce();
  return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
  assert(p_ == o.p_);
  Scalar r = *this;
  r.v_ += o.v_;
  r.reduce();
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
  assert(p_ == o.p_);
  Scalar r = *this;
  r.v_ -= o.v_;
  r.reduce();
  return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
  assert(p_ == o.p_);
  Scalar r = *this;
  r.v_ *= o.v_;
  r.reduce();
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  Scalar r = *this;
  if (p_ == 0) {
    r.v_ = 1 / v_;
  } else {
    mpz_class inv, a = v_.get_num(), p(p_);
    if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0)
      throw std::domain_error("not invertible mod p");
    r.v_ = mpq_class(inv);
  }
  r.reduce();
  return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

std::string Scalar::str() const { return v_.get_str(); }

bool quadratic_is_irreducible(const Field& k, const Scalar& l1, const Scalar& l2) {
  assert(l1.field() == k && l2.field() == k);
  if (k.is_rational()) {
    // Reducible iff the discriminant l1^2 + 4 l2 is a square in Q.
    mpq_class disc = l1.value() * l1.value() + 4 * l2.value();
    if (disc < 0) return true;
    mpz_class num = disc.get_num(), den = disc.get_den();
    return !(mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t()));
  }
  for (long r = 0; r < k.p; ++r) {
    Scalar x(k, r);
    if (x * x == l1 * x + l2) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Poly

Poly Poly::operator+(const Poly& o) const {
  assert(k_ == o.k_);
  std::vector<Scalar> c(std::max(c_.size(), o.c_.size()), Scalar::zero(k_));
  for (size_t i = 0; i < c.size(); ++i) {
    Scalar v = Scalar::zero(k_);
    if (i < c_.size()) v += c_[i];
    if (i < o.c_.size()) v += o.c_[i];
    c[i] = v;
  }
  return Poly(k_, std::move(c));
}

Poly Poly::operator-(const Poly& o) const { return *this + o * Scalar(k_, -1); }

Poly Poly::operator*(const Poly& o) const {
  assert(k_ == o.k_);
  if (is_zero() || o.is_zero()) return Poly(k_);
  std::vector<Scalar> c(c_.size() + o.c_.size() - 1, Scalar::zero(k_));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
  return Poly(k_, std::move(c));
}

Poly Poly::operator*(const Scalar& s) const {
  std::vector<Scalar> c = c_;
  for (auto& v : c) v *= s;
  return Poly(k_, std::move(c));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  assert(!d.is_zero());
  Poly q(k_), r = *this;
  Scalar dl = d.lead().inverse();
  std::vector<Scalar> qc(std::max(0, degree() - d.degree() + 1), Scalar::zero(k_));
  while (!r.is_zero() && r.degree() >= d.degree()) {
    int shift = r.degree() - d.degree();
    Scalar f = r.lead() * dl;
    qc[shift] = f;
    std::vector<Scalar> sub(shift, Scalar::zero(k_));
    sub.insert(sub.end(), d.c_.begin(), d.c_.end());
    r = r - Poly(k_, std::move(sub)) * f;
  }
  return {Poly(k_, std::move(qc)), r};
}

Poly Poly::monic() const {
  assert(!is_zero());
  return *this * lead().inverse();
}

Poly Poly::pow(int n) const {
  assert(n >= 0);
  Poly r = Poly::constant(Scalar::one(k_)), b = *this;
  while (n > 0) {
    if (n & 1) r = r * b;
    b = b * b;
    n >>= 1;
  }
  return r;
}

Scalar Poly::eval(const Scalar& at) const {
  Scalar r = Scalar::zero(k_);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * at + *it;
  return r;
}

Poly Poly::gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x.divmod(y).second;
    x = y;
    y = r;
  }
  return x.is_zero() ? x : x.monic();
}

Poly Poly::parse(const Field& k, const std::string& s) {
  // Grammar: sum of terms c, x, cx, x^e, cx^e with integer (or rational a/b)
  // coefficients; whitespace ignored.
  std::string t;
  for (char ch : s)
    if (!isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  if (t.empty()) throw std::invalid_argument("empty polynomial");
  Poly result(k);
  size_t i = 0;
  while (i < t.size()) {
    int sign = 1;
    while (i < t.size() && (t[i] == '+' || t[i] == '-')) {
      if (t[i] == '-') sign = -sign;
      ++i;
    }
    if (i >= t.size()) throw std::invalid_argument("trailing sign in polynomial: " + s);
    std::string num;
    while (i < t.size() && (isdigit(static_cast<unsigned char>(t[i])) || t[i] == '/')) num.push_back(t[i++]);
    Scalar coeff = num.empty() ? Scalar::one(k) : Scalar::parse(k, num);
    if (sign < 0) coeff = -coeff;
    int exp = 0;
    if (i < t.size() && t[i] == 'x') {
      ++i;
      exp = 1;
      if (i < t.size() && t[i] == '^') {
        ++i;
        std::string e;
        while (i < t.size() && isdigit(static_cast<unsigned char>(t[i]))) e.push_back(t[i++]);
        if (e.empty()) throw std::invalid_argument("missing exponent: " + s);
        exp = std::stoi(e);
      }
    } else if (num.empty()) {
      throw std::invalid_argument("bad term in polynomial: " + s);
    }
    std::vector<Scalar> c(exp + 1, Scalar::zero(k));
    c[exp] = coeff;
    result = result + Poly(k, std::move(c));
  }
  return result;
}

std::string Poly::str() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    Scalar c = coeff(i);
    if (c.is_zero()) continue;
    bool neg = c.value() < 0;
    Scalar mag = neg ? -c : c;
    if (first) {
      if (neg) out << "-";
      first = false;
    } else {
      out << (neg ? " - " : " + ");
    }
    if (i == 0 || !mag.is_one()) out << mag.str();
    if (i >= 1) {
      out << "x";
      if (i >= 2) out << "^" << i;
    }
  }
  return out.str();
}

namespace {

// All monic polynomials of the given degree over F_p, lexicographic by
// coefficient vector; used for trial division.
std::vector<Poly> monic_polys(const Field& k, int deg) {
  std::vector<Poly> out;
  std::vector<long> digits(deg, 0);
  while (true) {
    std::vector<Scalar> c;
    c.reserve(deg + 1);
    for (long d : digits) c.emplace_back(k, d);
    c.push_back(Scalar::one(k));
    out.emplace_back(k, std::move(c));
    int i = 0;
    while (i < deg) {
      if (++digits[i] < k.p) break;
      digits[i++] = 0;
    }
    if (i == deg) break;
  }
  return out;
}

bool has_rational_root(const Poly& f) {
  // Rational root theorem after clearing denominators.
  mpz_class lcm = 1;
  for (int i = 0; i <= f.degree(); ++i) {
    mpz_class den = f.coeff(i).value().get_den();
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
  }
  std::vector<mpz_class> ic(f.degree() + 1);
  for (int i = 0; i <= f.degree(); ++i) {
    mpq_class v = f.coeff(i).value() * mpq_class(lcm);
    v.canonicalize();
    assert(v.get_den() == 1);
    ic[i] = v.get_num();
  }
  int low = 0;
  while (low <= f.degree() && ic[low] == 0) ++low;
  if (low > 0) return true;  // x divides f
  mpz_class a0 = abs(ic[0]), an = abs(ic[f.degree()]);
  auto divisors = [](const mpz_class& n) {
    std::vector<mpz_class> ds;
    for (mpz_class d = 1; d * d <= n; ++d)
      if (n % d == 0) {
        ds.push_back(d);
        ds.push_back(n / d);
      }
    return ds;
  };
  Field q = Field::rationals();
  for (const mpz_class& r : divisors(a0))
    for (const mpz_class& s : divisors(an)) {
      mpq_class cand(r, s);
      cand.canonicalize();
      if (f.eval(Scalar(q, cand)).is_zero()) return true;
      if (f.eval(Scalar(q, -cand)).is_zero()) return true;
    }
  return false;
}

}  // namespace

Poly::Irred Poly::irreducible() const {
  int d = degree();
  if (d <= 0) return Irred::No;
  if (d == 1) return Irred::Yes;
  if (k_.p != 0) {
    // Trial division over F_p is complete for desk-scale inputs.
    for (int e = 1; e <= d / 2; ++e)
      for (const Poly& q : monic_polys(k_, e))
        if (divmod(q).second.is_zero()) return Irred::No;
    return Irred::Yes;
  }
  if (has_rational_root(*this)) return Irred::No;
  if (d <= 3) return Irred::Yes;  // no root and degree <= 3 means irreducible
  return Irred::Unknown;
}

std::optional<std::pair<Poly, int>> Poly::prime_power() const {
  int d = degree();
  if (d < 1 || !is_monic()) return std::nullopt;
  if (k_.p != 0) {
    // Full factorization by repeated trial division.
    Poly rest = *this;
    std::optional<Poly> base;
    int count = 0;
    for (int e = 1; rest.degree() >= 1 && e <= rest.degree(); ++e) {
      for (const Poly& q : monic_polys(k_, e)) {
        while (rest.degree() >= e && rest.divmod(q).second.is_zero()) {
          if (base && *base != q) return std::nullopt;
          base = q;
          ++count;
          rest = rest.divmod(q).first;
          if (q.irreducible() != Irred::Yes) return std::nullopt;
        }
        if (rest.degree() < 1) break;
      }
    }
    if (!base || rest.degree() >= 1) return std::nullopt;
    return std::make_pair(*base, count);
  }
  // Over Q: for each n dividing d, try to solve q^n = *this for monic q by
  // matching coefficients from the top (triangular system), then verify.
  for (int n = d; n >= 1; --n) {
    if (d % n != 0) continue;
    int e = d / n;
    Poly q(k_, std::vector<Scalar>(e + 1, Scalar::zero(k_)));
    std::vector<Scalar> qc(e + 1, Scalar::zero(k_));
    qc[e] = Scalar::one(k_);
    for (int j = e - 1; j >= 0; --j) {
      // Coefficient of x^(d - (e - j)) in q^n equals n*qc[j] plus terms in
      // already-known higher coefficients; solve by one substitution step.
      Poly trial(k_, qc);
      Poly pn = trial.pow(n);
      Scalar gap = coeff(d - (e - j)) - pn.coeff(d - (e - j));
      qc[j] = gap / Scalar(k_, n);
    }
    Poly cand(k_, qc);
    if (cand.pow(n) == *this) {
      Irred ir = cand.irreducible();
      if (ir == Irred::No) continue;
      if (n == 1 && ir == Irred::Unknown) return std::make_pair(cand, 1);  // asserted
      if (ir == Irred::Yes || ir == Irred::Unknown) return std::make_pair(cand, n);
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Matrix

Matrix Matrix::identity(const Field& k, int n) {
  Matrix m(k, n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, Scalar::one(k));
  return m;
}

Matrix Matrix::from_rows(const Field& k, const std::vector<std::vector<long>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  Matrix m(k, r, c);
  for (int i = 0; i < r; ++i) {
    assert(static_cast<int>(rows[i].size()) == c);
    for (int j = 0; j < c; ++j) m.set(i, j, Scalar(k, rows[i][j]));
  }
  return m;
}

Matrix Matrix::companion(const Poly& p) {
  assert(p.is_monic() && p.degree() >= 1);
  int n = p.degree();
  Matrix m(p.field(), n, n);
  for (int i = 1; i < n; ++i) m.set(i, i - 1, Scalar::one(p.field()));
  for (int i = 0; i < n; ++i) m.set(i, n - 1, -p.coeff(i));
  return m;
}

Matrix Matrix::block_diag(const Matrix& a, const Matrix& b) {
  assert(a.k_ == b.k_);
  Matrix m(a.k_, a.rows_ + b.rows_, a.cols_ + b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j) m.set(i, j, a.at(i, j));
  for (int i = 0; i < b.rows_; ++i)
    for (int j = 0; j < b.cols_; ++j) m.set(a.rows_ + i, a.cols_ + j, b.at(i, j));
  return m;
}

Matrix Matrix::kronecker(const Matrix& a, const Matrix& b) {
  assert(a.k_ == b.k_);
  Matrix m(a.k_, a.rows_ * b.rows_, a.cols_ * b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j)
      for (int k = 0; k < b.rows_; ++k)
        for (int l = 0; l < b.cols_; ++l)
          m.set(i * b.rows_ + k, j * b.cols_ + l, a.at(i, j) * b.at(k, l));
  return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
  assert(k_ == o.k_ && rows_ == o.rows_ && cols_ == o.cols_);
  Matrix m = *this;
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] += o.a_[i];
  return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
  assert(k_ == o.k_ && rows_ == o.rows_ && cols_ == o.cols_);
  Matrix m = *this;
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] -= o.a_[i];
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  assert(k_ == o.k_ && cols_ == o.rows_);
  Matrix m(k_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int l = 0; l < cols_; ++l) {
      const Scalar& ail = at(i, l);
      if (ail.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        if (o.at(l, j).is_zero()) continue;
        m.set(i, j, m.at(i, j) + ail * o.at(l, j));
      }
    }
  return m;
}

Matrix Matrix::operator*(const Scalar& s) const {
  Matrix m = *this;
  for (auto& v : m.a_) v *= s;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(k_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.set(j, i, at(i, j));
  return m;
}

Matrix Matrix::pow(int n) const {
  assert(is_square() && n >= 0);
  Matrix r = identity(k_, rows_), b = *this;
  while (n > 0) {
    if (n & 1) r = r * b;
    b = b * b;
    n >>= 1;
  }
  return r;
}

bool Matrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Scalar& v) { return v.is_zero(); });
}

bool Matrix::is_identity() const { return is_square() && *this == identity(k_, rows_); }

Matrix Matrix::rref(std::vector<int>* pivot_cols) const {
  Matrix m = *this;
  if (pivot_cols) pivot_cols->clear();
  int lead = 0;
  for (int col = 0; col < cols_ && lead < rows_; ++col) {
    int piv = -1;
    for (int i = lead; i < rows_; ++i)
      if (!m.at(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    for (int j = 0; j < cols_; ++j) {
      Scalar tmp = m.at(lead, j);
      m.set(lead, j, m.at(piv, j));
      m.set(piv, j, tmp);
    }
    Scalar inv = m.at(lead, col).inverse();
    for (int j = 0; j < cols_; ++j) m.set(lead, j, m.at(lead, j) * inv);
    for (int i = 0; i < rows_; ++i) {
      if (i == lead || m.at(i, col).is_zero()) continue;
      Scalar f = m.at(i, col);
      for (int j = 0; j < cols_; ++j) m.set(i, j, m.at(i, j) - f * m.at(lead, j));
    }
    if (pivot_cols) pivot_cols->push_back(col);
    ++lead;
  }
  return m;
}

int Matrix::rank() const {
  std::vector<int> piv;
  rref(&piv);
  return static_cast<int>(piv.size());
}

Matrix Matrix::kernel() const {
  std::vector<int> piv;
  Matrix r = rref(&piv);
  std::vector<int> free_cols;
  for (int j = 0; j < cols_; ++j)
    if (std::find(piv.begin(), piv.end(), j) == piv.end()) free_cols.push_back(j);
  Matrix k(k_, cols_, static_cast<int>(free_cols.size()));
  for (size_t f = 0; f < free_cols.size(); ++f) {
    k.set(free_cols[f], static_cast<int>(f), Scalar::one(k_));
    for (size_t pi = 0; pi < piv.size(); ++pi)
      k.set(piv[pi], static_cast<int>(f), -r.at(static_cast<int>(pi), free_cols[f]));
  }
  return k;
}

std::optional<Matrix> Matrix::solve(const Matrix& b) const {
  assert(b.rows_ == rows_ && b.k_ == k_);
  // Eliminate on the augmented matrix [A | b].
  Matrix aug(k_, rows_, cols_ + b.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) aug.set(i, j, at(i, j));
    for (int j = 0; j < b.cols_; ++j) aug.set(i, cols_ + j, b.at(i, j));
  }
  std::vector<int> piv;
  Matrix r = aug.rref(&piv);
  for (int idx = static_cast<int>(piv.size()) - 1; idx >= 0; --idx)
    if (piv[idx] >= cols_) return std::nullopt;  // pivot in the rhs block: inconsistent
  Matrix x(k_, cols_, b.cols_);
  for (size_t pi = 0; pi < piv.size(); ++pi)
    for (int j = 0; j < b.cols_; ++j) x.set(piv[pi], j, r.at(static_cast<int>(pi), cols_ + j));
  return x;
}

std::optional<Matrix> Matrix::inverse() const {
  assert(is_square());
  auto x = solve(identity(k_, rows_));
  if (!x) return std::nullopt;
  if (!((*this) * *x).is_identity()) return std::nullopt;
  return x;
}

Scalar Matrix::det() const {
  assert(is_square());
  Matrix m = *this;
  Scalar d = Scalar::one(k_);
  for (int col = 0; col < cols_; ++col) {
    int piv = -1;
    for (int i = col; i < rows_; ++i)
      if (!m.at(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return Scalar::zero(k_);
    if (piv != col) {
      for (int j = 0; j < cols_; ++j) {
        Scalar tmp = m.at(col, j);
        m.set(col, j, m.at(piv, j));
        m.set(piv, j, tmp);
      }
      d = -d;
    }
    d *= m.at(col, col);
    Scalar inv = m.at(col, col).inverse();
    for (int i = col + 1; i < rows_; ++i) {
      if (m.at(i, col).is_zero()) continue;
      Scalar f = m.at(i, col) * inv;
      for (int j = col; j < cols_; ++j) m.set(i, j, m.at(i, j) - f * m.at(col, j));
    }
  }
  return d;
}

Poly Matrix::char_poly() const {
  assert(is_square());
  int n = rows_;
  // Berkowitz: iterate over leading principal submatrices, multiplying by
  // Toeplitz matrices built from -a, -R M^k C. Coefficients high-degree-first.
  std::vector<Scalar> c = {Scalar::one(k_)};
  for (int r = 1; r <= n; ++r) {
    // t[0] = 1, t[1] = -a, t[k] = -(R M^(k-2) C) for k >= 2.
    std::vector<Scalar> t(r + 1, Scalar::zero(k_));
    t[0] = Scalar::one(k_);
    t[1] = -at(r - 1, r - 1);
    if (r >= 2) {
      std::vector<Scalar> vec(r - 1);  // holds M^k C
      for (int i = 0; i < r - 1; ++i) vec[i] = at(i, r - 1);
      for (int k = 2; k <= r; ++k) {
        Scalar dot = Scalar::zero(k_);
        for (int i = 0; i < r - 1; ++i) dot += at(r - 1, i) * vec[i];
        t[k] = -dot;
        if (k < r) {
          std::vector<Scalar> next(r - 1, Scalar::zero(k_));
          for (int i = 0; i < r - 1; ++i)
            for (int j = 0; j < r - 1; ++j) next[i] += at(i, j) * vec[j];
          vec = std::move(next);
        }
      }
    }
    std::vector<Scalar> nc(r + 1, Scalar::zero(k_));
    for (int i = 0; i <= r; ++i)
      for (int j = 0; j < static_cast<int>(c.size()); ++j)
        if (i - j >= 0 && i - j <= r) nc[i] += t[i - j] * c[j];
    c = std::move(nc);
  }
  std::reverse(c.begin(), c.end());
  return Poly(k_, std::move(c));
}

namespace {

// Smith normal form of xI - A over K[x]; returns the nontrivial diagonal
// entries (monic, each dividing the next).
std::vector<Poly> smith_invariant_factors(const Matrix& a) {
  const Field k = a.field();
  int n = a.rows();
  std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n, Poly::zero(k)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Poly e = Poly::constant(-a.at(i, j));
      if (i == j) e = e + Poly::x(k);
      m[i][j] = e;
    }
  auto deg = [](const Poly& p) { return p.degree(); };
  std::vector<Poly> factors;
  int top = 0;
  while (top < n) {
    // Find the nonzero entry of minimal degree in the remaining block.
    int bi = -1, bj = -1;
    for (int i = top; i < n; ++i)
      for (int j = top; j < n; ++j)
        if (!m[i][j].is_zero() && (bi < 0 || deg(m[i][j]) < deg(m[bi][bj]))) {
          bi = i;
          bj = j;
        }
    if (bi < 0) break;
    std::swap(m[top], m[bi]);
    for (int i = 0; i < n; ++i) std::swap(m[i][top], m[i][bj]);
    bool clean = true;
    for (int i = top + 1; i < n; ++i) {
      if (m[i][top].is_zero()) continue;
      Poly q = m[i][top].divmod(m[top][top]).first;
      for (int j = top; j < n; ++j) m[i][j] = m[i][j] - q * m[top][j];
      if (!m[i][top].is_zero()) clean = false;
    }
    for (int j = top + 1; j < n; ++j) {
      if (m[top][j].is_zero()) continue;
      Poly q = m[top][j].divmod(m[top][top]).first;
      for (int i = top; i < n; ++i) m[i][j] = m[i][j] - m[i][top] * q;
      if (!m[top][j].is_zero()) clean = false;
    }
    if (!clean) continue;  // remainders became new minimal-degree entries
    // Ensure divisibility of the rest of the block by the pivot.
    bool divides_all = true;
    for (int i = top + 1; i < n && divides_all; ++i)
      for (int j = top + 1; j < n; ++j)
        if (!m[i][j].divmod(m[top][top]).second.is_zero()) {
          // Fold row i into row top to force another reduction round.
          for (int l = top; l < n; ++l) m[top][l] = m[top][l] + m[i][l];
          divides_all = false;
          break;
        }
    if (!divides_all) continue;
    factors.push_back(m[top][top].monic());
    ++top;
  }
  std::vector<Poly> nontrivial;
  for (const Poly& f : factors)
    if (f.degree() >= 1) nontrivial.push_back(f);
  return nontrivial;
}

}  // namespace

std::vector<Poly> Matrix::invariant_factors() const {
  assert(is_square());
  return smith_invariant_factors(*this);
}

bool similar(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || !(a.field() == b.field())) return false;
  return a.invariant_factors() == b.invariant_factors();
}

std::string Matrix::str() const {
  std::ostringstream out;
  out << "[";
  for (int i = 0; i < rows_; ++i) {
    out << (i ? "; " : "");
    for (int j = 0; j < cols_; ++j) out << (j ? " " : "") << at(i, j).str();
  }
  out << "]";
  return out.str();
}

}  // namespace fga
