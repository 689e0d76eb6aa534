#include "trop/polynomial.hpp"

#include <numeric>
#include <sstream>

namespace trop {

HomPolynomial HomPolynomial::constant(std::size_t nvars, const Integer& c) {
  HomPolynomial p(nvars, 0);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

HomPolynomial HomPolynomial::variable(std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw InputError("variable index out of range");
  HomPolynomial p(nvars, 1);
  Exponent e(nvars, 0);
  e[i] = 1;
  p.add_term(e, 1);
  return p;
}

HomPolynomial HomPolynomial::linear(const LinearForm& form) {
  HomPolynomial p(form.size(), 1);
  for (std::size_t i = 0; i < form.size(); ++i) {
    Exponent e(form.size(), 0);
    e[i] = 1;
    p.add_term(e, form[i]);
  }
  return p;
}

HomPolynomial HomPolynomial::monomial(const Exponent& e, const Integer& c) {
  HomPolynomial p(e.size(), std::accumulate(e.begin(), e.end(), 0u));
  p.add_term(e, c);
  return p;
}

void HomPolynomial::add_term(const Exponent& e, const Integer& c) {
  if (e.size() != nvars_) throw InputError("exponent length does not match variable count");
  if (std::accumulate(e.begin(), e.end(), 0u) != degree_) throw InputError("exponent does not sum to degree");
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

void HomPolynomial::check_compatible(const HomPolynomial& o) const {
  if (nvars_ != o.nvars_) throw InputError("polynomials in different variable counts");
  if (degree_ != o.degree_) throw InputError("degree mismatch");
}

HomPolynomial HomPolynomial::operator+(const HomPolynomial& o) const {
  check_compatible(o);
  HomPolynomial r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

HomPolynomial HomPolynomial::operator-(const HomPolynomial& o) const {
  check_compatible(o);
  HomPolynomial r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

HomPolynomial HomPolynomial::operator-() const { return scaled(-1); }

HomPolynomial HomPolynomial::operator*(const HomPolynomial& o) const {
  if (nvars_ != o.nvars_) throw InputError("polynomials in different variable counts");
  HomPolynomial r(nvars_, degree_ + o.degree_);
  Exponent e(nvars_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      for (std::size_t i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

HomPolynomial HomPolynomial::scaled(const Integer& k) const {
  HomPolynomial r(nvars_, degree_);
  if (k == 0) return r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * k);
  return r;
}

bool HomPolynomial::operator==(const HomPolynomial& o) const {
  return nvars_ == o.nvars_ && degree_ == o.degree_ && terms_ == o.terms_;
}

Rational HomPolynomial::eval(const RationalVector& x) const {
  if (x.size() != nvars_) throw InputError("evaluation point has wrong dimension");
  Rational s = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      for (unsigned k = 0; k < e[i]; ++k) t *= x[i];
    s += t;
  }
  return s;
}

Integer HomPolynomial::eval(const LatticeVector& x) const {
  if (x.size() != nvars_) throw InputError("evaluation point has wrong dimension");
  Integer s = 0;
  Integer pw;
  for (const auto& [e, c] : terms_) {
    Integer t = c;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      mpz_pow_ui(pw.get_mpz_t(), x[i].get_mpz_t(), e[i]);
      t *= pw;
    }
    s += t;
  }
  return s;
}

HomPolynomial HomPolynomial::substitute(const IntegerMatrix& m) const {
  if (m.rows() != nvars_) throw InputError("substitution matrix has wrong row count");
  const std::size_t k = m.cols();
  std::vector<HomPolynomial> images;
  images.reserve(nvars_);
  for (std::size_t j = 0; j < nvars_; ++j) images.push_back(HomPolynomial::linear(m.row(j)));
  HomPolynomial r(k, degree_);
  for (const auto& [e, c] : terms_) {
    HomPolynomial t = HomPolynomial::constant(k, c);
    for (std::size_t j = 0; j < nvars_; ++j)
      for (unsigned p = 0; p < e[j]; ++p) t = t * images[j];
    r = r + t;
  }
  return r;
}

HomPolynomial HomPolynomial::divide_exact(const HomPolynomial& q) const {
  if (nvars_ != q.nvars_) throw InputError("polynomials in different variable counts");
  if (q.is_zero()) throw InputError("division by the zero polynomial");
  if (q.degree_ > degree_) {
    if (is_zero()) return HomPolynomial(nvars_, 0);
    throw InputError("inexact division");
  }
  HomPolynomial quot(nvars_, degree_ - q.degree_);
  HomPolynomial rem = *this;
  const auto& [lq_e, lq_c] = *q.terms_.begin();
  Exponent e(nvars_);
  while (!rem.is_zero()) {
    const auto& [lr_e, lr_c] = *rem.terms_.begin();
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (lr_e[i] < lq_e[i]) throw InputError("inexact division");
      e[i] = lr_e[i] - lq_e[i];
    }
    if (lr_c % lq_c != 0) throw InputError("inexact division");
    Integer c = lr_c / lq_c;
    HomPolynomial t = HomPolynomial::monomial(e, c);
    quot.add_term(e, c);
    rem = rem - t * q;
  }
  return quot;
}

std::string HomPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    bool mono = std::any_of(e.begin(), e.end(), [](unsigned x) { return x > 0; });
    Integer a = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (a != 1 || !mono) os << a.get_str();
    bool need_star = (a != 1 || !mono);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (need_star) os << '*';
      os << 'x' << (i + 1);
      if (e[i] > 1) os << '^' << e[i];
      need_star = true;
    }
  }
  return os.str();
}

HomPolynomial product_of_forms(std::size_t nvars, const std::vector<LinearForm>& forms) {
  HomPolynomial p = HomPolynomial::constant(nvars, 1);
  for (const auto& f : forms) p = p * HomPolynomial::linear(f);
  return p;
}

}  // namespace trop
