#include "antiwick/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "antiwick/errors.hpp"

namespace antiwick {

struct Symbol::State {
  int dim = 1;
  SymbolKind kind = SymbolKind::generic;
  bool h_dependent = false;
  std::string id;
  std::optional<SemiclassicalData> semiclassical;
  double floor = 0.0;

  std::vector<ZTerm> zterms;
  int degree = 0;
  std::vector<XWTerm> base;
  double beta = 0.0;
  double cval = 0.0;
  Profile profile;
  Evaluator eval;
};

Symbol make_symbol(std::shared_ptr<const Symbol::State> s) { return Symbol(std::move(s)); }

const char* to_string(SymbolKind k) noexcept {
  switch (k) {
    case SymbolKind::generic: return "generic";
    case SymbolKind::polynomial: return "polynomial";
    case SymbolKind::abs_power: return "abs_power";
    case SymbolKind::radial: return "radial";
    case SymbolKind::constant: return "constant";
  }
  return "unknown";
}

namespace {

using State = Symbol::State;

void check_dim(int dim) {
  if (dim < 1) throw ValidationError("symbol dimension must be positive");
}

double ipow(double v, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= v;
  return r;
}

std::complex<double> ipow(std::complex<double> v, int n) {
  std::complex<double> r = 1.0;
  for (int i = 0; i < n; ++i) r *= v;
  return r;
}

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

int total(const std::vector<int>& v) {
  int s = 0;
  for (int e : v) s += e;
  return s;
}

void check_term_shape(const std::vector<int>& a, const std::vector<int>& b, int dim,
                      const char* what) {
  if (static_cast<int>(a.size()) != dim || static_cast<int>(b.size()) != dim)
    throw ValidationError(std::string(what) + ": multi-index length must equal the dimension");
  for (int e : a)
    if (e < 0) throw ValidationError(std::string(what) + ": negative exponent");
  for (int e : b)
    if (e < 0) throw ValidationError(std::string(what) + ": negative exponent");
}

using ZKey = std::pair<std::vector<int>, std::vector<int>>;

std::vector<ZTerm> merge_terms(const std::map<ZKey, std::complex<double>>& m) {
  double scale = 0.0;
  for (const auto& [k, c] : m) scale = std::max(scale, std::abs(c));
  std::vector<ZTerm> out;
  for (const auto& [k, c] : m)
    if (std::abs(c) > 1e-15 * scale) out.push_back({k.first, k.second, c});
  return out;
}

std::shared_ptr<State> base_state(int dim, SymbolKind kind) {
  check_dim(dim);
  auto s = std::make_shared<State>();
  s->dim = dim;
  s->kind = kind;
  return s;
}

/// Magnitude bound used to decide whether a negative polynomial value is roundoff.
double zterm_magnitude(const std::vector<ZTerm>& t, std::span<const double> z) {
  const std::size_t d = z.size() / 2;
  double m = 0.0;
  for (const auto& term : t) {
    double v = std::abs(term.coeff);
    for (std::size_t j = 0; j < d; ++j)
      v *= ipow(std::hypot(z[j], z[d + j]), term.alpha[j] + term.beta[j]);
    m += v;
  }
  return m;
}

}  // namespace

double eval_xw(const std::vector<XWTerm>& p, std::span<const double> z) {
  const std::size_t d = z.size() / 2;
  double s = 0.0;
  for (const auto& t : p) {
    double v = t.coeff;
    for (std::size_t j = 0; j < d; ++j) v *= ipow(z[j], t.x_pow[j]) * ipow(z[d + j], t.w_pow[j]);
    s += v;
  }
  return s;
}

std::complex<double> eval_z(const std::vector<ZTerm>& t, std::span<const double> z) {
  const std::size_t d = z.size() / 2;
  std::complex<double> s = 0.0;
  for (const auto& term : t) {
    std::complex<double> v = term.coeff;
    for (std::size_t j = 0; j < d; ++j) {
      const std::complex<double> zj(z[j], z[d + j]);
      v *= ipow(zj, term.alpha[j]) * ipow(std::conj(zj), term.beta[j]);
    }
    s += v;
  }
  return s;
}

Symbol Symbol::constant(double c, int dim) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw ValidationError("constant symbol must be finite and >= 0");
  auto s = base_state(dim, SymbolKind::constant);
  s->cval = c;
  s->floor = c;
  s->eval = [c](std::span<const double>, double) { return c; };
  return Symbol(std::move(s));
}

Symbol Symbol::polynomial(std::vector<ZTerm> terms, int dim) {
  auto s = base_state(dim, SymbolKind::polynomial);
  std::map<ZKey, std::complex<double>> merged;
  for (auto& t : terms) {
    check_term_shape(t.alpha, t.beta, dim, "polynomial term");
    merged[{t.alpha, t.beta}] += t.coeff;
  }
  for (const auto& [k, c] : merged) {
    auto it = merged.find({k.second, k.first});
    const std::complex<double> partner = it == merged.end() ? 0.0 : it->second;
    if (std::abs(c - std::conj(partner)) > 1e-12 * std::max(1.0, std::abs(c)))
      throw ValidationError("coefficient table is not Hermitian: c(alpha,beta) != conj(c(beta,alpha))");
  }
  s->zterms = merge_terms(merged);
  for (const auto& t : s->zterms) s->degree = std::max(s->degree, total(t.alpha) + total(t.beta));
  s->eval = [terms = s->zterms](std::span<const double> z, double) {
    const double v = eval_z(terms, z).real();
    if (v < 0.0) {
      if (v >= -1e-12 * (1.0 + zterm_magnitude(terms, z))) return 0.0;
      throw NumericError("polynomial symbol is negative at " + format_point(z.data(), z.size()));
    }
    return v;
  };
  return Symbol(std::move(s));
}

Symbol Symbol::polynomial_xw(const std::vector<XWTerm>& terms, int dim) {
  // x = (z + conj z)/2, w = (z - conj z)/(2i), expanded coordinate by coordinate.
  std::map<ZKey, std::complex<double>> acc;
  const std::complex<double> two_i(0.0, 2.0);
  for (const auto& t : terms) {
    check_term_shape(t.x_pow, t.w_pow, dim, "polynomial_xw term");
    std::map<ZKey, std::complex<double>> partial{{{std::vector<int>(), std::vector<int>()}, t.coeff}};
    for (int j = 0; j < dim; ++j) {
      const int p = t.x_pow[j];
      const int q = t.w_pow[j];
      std::map<std::pair<int, int>, std::complex<double>> one;
      const std::complex<double> pre = 1.0 / (std::pow(2.0, p) * ipow(two_i, q));
      for (int k = 0; k <= p; ++k)
        for (int l = 0; l <= q; ++l) {
          const double sign = ((q - l) % 2) ? -1.0 : 1.0;
          one[{k + l, (p - k) + (q - l)}] += pre * binom(p, k) * binom(q, l) * sign;
        }
      std::map<ZKey, std::complex<double>> next;
      for (const auto& [key, c] : partial)
        for (const auto& [ab, c1] : one) {
          ZKey nk = key;
          nk.first.push_back(ab.first);
          nk.second.push_back(ab.second);
          next[nk] += c * c1;
        }
      partial = std::move(next);
    }
    for (const auto& [k, c] : partial) acc[k] += c;
  }
  std::vector<ZTerm> out = merge_terms(acc);
  // Exact arithmetic would make the table Hermitian; clean residual roundoff.
  for (auto& t : out) {
    auto it = acc.find({t.beta, t.alpha});
    if (it != acc.end()) t.coeff = 0.5 * (t.coeff + std::conj(it->second));
  }
  return polynomial(std::move(out), dim);
}

Symbol Symbol::abs_power(std::vector<XWTerm> p, double beta, int dim) {
  if (!std::isfinite(beta)) throw ValidationError("abs_power exponent must be finite");
  for (const auto& t : p) check_term_shape(t.x_pow, t.w_pow, dim, "abs_power polynomial term");
  auto s = base_state(dim, SymbolKind::abs_power);
  s->base = std::move(p);
  s->beta = beta;
  s->eval = [poly = s->base, beta](std::span<const double> z, double) {
    const double v = std::abs(eval_xw(poly, z));
    if (v == 0.0) {
      if (beta < 0.0)
        throw DomainError("abs_power symbol evaluated on the zero set of P at " +
                          format_point(z.data(), z.size()));
      return beta == 0.0 ? 1.0 : 0.0;
    }
    return std::pow(v, beta);
  };
  return Symbol(std::move(s));
}

Symbol Symbol::radial_power(double beta, int dim) {
  std::vector<XWTerm> p;
  for (int j = 0; j < dim; ++j) {
    std::vector<int> e(dim, 0), zero(dim, 0);
    e[j] = 2;
    p.push_back({e, zero, 1.0});
    p.push_back({zero, e, 1.0});
  }
  return abs_power(std::move(p), beta, dim);
}

Symbol Symbol::radial(Profile g, int dim) {
  auto s = base_state(dim, SymbolKind::radial);
  s->profile = g;
  s->eval = [g = std::move(g)](std::span<const double> z, double) {
    double r2 = 0.0;
    for (double c : z) r2 += c * c;
    return g(r2);
  };
  return Symbol(std::move(s));
}

Symbol Symbol::generic(Evaluator f, int dim, bool h_dependent) {
  auto s = base_state(dim, SymbolKind::generic);
  s->h_dependent = h_dependent;
  s->eval = std::move(f);
  return Symbol(std::move(s));
}

double Symbol::operator()(std::span<const double> z, double h) const {
  if (static_cast<int>(z.size()) != 2 * state_->dim)
    throw ShapeError("phase-space point has the wrong length for this symbol");
  const double v = state_->eval(z, h);
  if (!std::isfinite(v) || v < 0.0)
    throw NumericError("symbol value is negative or non-finite at " + format_point(z.data(), z.size()));
  return v;
}

double Symbol::at(double x, double w, double h) const {
  const double z[2] = {x, w};
  return (*this)(std::span<const double>(z, 2), h);
}

int Symbol::dim() const noexcept { return state_->dim; }
SymbolKind Symbol::kind() const noexcept { return state_->kind; }
bool Symbol::h_dependent() const noexcept { return state_->h_dependent; }
const std::string& Symbol::id() const noexcept { return state_->id; }
const std::optional<SemiclassicalData>& Symbol::semiclassical() const noexcept {
  return state_->semiclassical;
}
double Symbol::floor() const noexcept { return state_->floor; }

Symbol Symbol::with_id(std::string id) const {
  auto s = std::make_shared<State>(*state_);
  s->id = std::move(id);
  return Symbol(std::move(s));
}

Symbol Symbol::with_semiclassical(SemiclassicalData data) const {
  if (!(data.rho >= 0.0 && data.rho < 0.5)) throw ValidationError("semiclassical rho must lie in [0, 1/2)");
  if (data.n0 < 0) throw ValidationError("semiclassical N0 must be nonnegative");
  auto s = std::make_shared<State>(*state_);
  s->semiclassical = data;
  return Symbol(std::move(s));
}

Symbol Symbol::with_floor(double f) const {
  auto s = std::make_shared<State>(*state_);
  s->floor = f;
  return Symbol(std::move(s));
}

const std::vector<ZTerm>& Symbol::z_terms() const noexcept { return state_->zterms; }
int Symbol::polynomial_degree() const noexcept { return state_->degree; }
const std::vector<XWTerm>& Symbol::base_polynomial() const noexcept { return state_->base; }
double Symbol::exponent() const noexcept { return state_->beta; }
double Symbol::constant_value() const noexcept { return state_->cval; }

std::optional<Symbol::Profile> Symbol::radial_profile() const {
  const State& s = *state_;
  if (s.h_dependent) return std::nullopt;
  switch (s.kind) {
    case SymbolKind::radial:
      return s.profile;
    case SymbolKind::constant: {
      const double c = s.cval;
      return Profile([c](double) { return c; });
    }
    case SymbolKind::abs_power: {
      if (s.dim != 1) return std::nullopt;
      double cx = 0.0, cw = 0.0;
      for (const auto& t : s.base) {
        if (t.x_pow[0] == 2 && t.w_pow[0] == 0) cx += t.coeff;
        else if (t.x_pow[0] == 0 && t.w_pow[0] == 2) cw += t.coeff;
        else if (t.coeff != 0.0) return std::nullopt;
      }
      if (cx != cw || cx == 0.0) return std::nullopt;
      const double c = std::abs(cx), beta = s.beta;
      return Profile([c, beta](double r2) {
        if (r2 == 0.0 && beta < 0.0) throw DomainError("radial power evaluated at the origin");
        return r2 == 0.0 ? (beta == 0.0 ? 1.0 : 0.0) : std::pow(c * r2, beta);
      });
    }
    case SymbolKind::polynomial: {
      if (s.dim != 1) return std::nullopt;
      std::vector<std::pair<int, double>> coeffs;
      for (const auto& t : s.zterms) {
        if (t.alpha[0] != t.beta[0]) return std::nullopt;
        coeffs.emplace_back(t.alpha[0], t.coeff.real());
      }
      return Profile([coeffs](double r2) {
        double v = 0.0;
        for (const auto& [k, c] : coeffs) v += c * ipow(r2, k);
        return v;
      });
    }
    case SymbolKind::generic:
      break;
  }
  return std::nullopt;
}

namespace {

std::shared_ptr<State> derived_state(const Symbol& a, SymbolKind kind) {
  auto s = base_state(a.dim(), kind);
  s->id = a.id();
  s->h_dependent = a.h_dependent();
  return s;
}

Symbol wrap_generic(const Symbol& a, Symbol::Evaluator f, bool h_dependent) {
  auto s = derived_state(a, SymbolKind::generic);
  s->h_dependent = h_dependent;
  s->eval = std::move(f);
  return make_symbol(std::move(s));
}

}  // namespace

Symbol dilated(const Symbol& a, double scale) {
  Symbol out = a;
  switch (a.kind()) {
    case SymbolKind::constant:
      return a;
    case SymbolKind::polynomial: {
      std::vector<ZTerm> t = a.z_terms();
      for (auto& term : t) term.coeff *= std::pow(scale, total(term.alpha) + total(term.beta));
      out = Symbol::polynomial(std::move(t), a.dim());
      break;
    }
    case SymbolKind::abs_power: {
      std::vector<XWTerm> p = a.base_polynomial();
      for (auto& term : p) term.coeff *= std::pow(scale, total(term.x_pow) + total(term.w_pow));
      out = Symbol::abs_power(std::move(p), a.exponent(), a.dim());
      break;
    }
    case SymbolKind::radial: {
      auto g = *a.radial_profile();
      const double s2 = scale * scale;
      out = Symbol::radial([g, s2](double r2) { return g(s2 * r2); }, a.dim());
      break;
    }
    case SymbolKind::generic:
      out = wrap_generic(
          a,
          [a, scale](std::span<const double> z, double h) {
            std::vector<double> y(z.begin(), z.end());
            for (double& c : y) c *= scale;
            return a(y, h);
          },
          a.h_dependent());
      break;
  }
  return out.with_id(a.id()).with_floor(a.floor());
}

Symbol translated(const Symbol& a, std::span<const double> v) {
  if (static_cast<int>(v.size()) != a.phase_dim()) throw ShapeError("translation vector has the wrong length");
  if (a.kind() == SymbolKind::constant) return a;
  std::vector<double> shift(v.begin(), v.end());
  return wrap_generic(
             a,
             [a, shift](std::span<const double> z, double h) {
               std::vector<double> y(z.begin(), z.end());
               for (std::size_t i = 0; i < y.size(); ++i) y[i] -= shift[i];
               return a(y, h);
             },
             a.h_dependent())
      .with_floor(a.floor());
}

Symbol scaled(const Symbol& a, double c) {
  if (!(c >= 0.0)) throw ValidationError("symbol scale factor must be nonnegative");
  Symbol out = a;
  if (a.kind() == SymbolKind::constant) {
    out = Symbol::constant(c * a.constant_value(), a.dim());
  } else if (a.kind() == SymbolKind::polynomial) {
    std::vector<ZTerm> t = a.z_terms();
    for (auto& term : t) term.coeff *= c;
    out = Symbol::polynomial(std::move(t), a.dim());
  } else {
    out = wrap_generic(a, [a, c](std::span<const double> z, double h) { return c * a(z, h); },
                       a.h_dependent());
  }
  return out.with_id(a.id()).with_floor(c * a.floor());
}

Symbol sum(const Symbol& a, const Symbol& b) {
  if (a.dim() != b.dim()) throw ShapeError("cannot add symbols of different dimension");
  Symbol out = a;
  if (a.kind() == SymbolKind::constant && b.kind() == SymbolKind::constant) {
    out = Symbol::constant(a.constant_value() + b.constant_value(), a.dim());
  } else if (a.kind() == SymbolKind::polynomial && b.kind() == SymbolKind::polynomial) {
    std::vector<ZTerm> t = a.z_terms();
    t.insert(t.end(), b.z_terms().begin(), b.z_terms().end());
    out = Symbol::polynomial(std::move(t), a.dim());
  } else {
    out = wrap_generic(a, [a, b](std::span<const double> z, double h) { return a(z, h) + b(z, h); },
                       a.h_dependent() || b.h_dependent());
  }
  return out.with_id(a.id()).with_floor(a.floor() + b.floor());
}

Symbol plus_constant(const Symbol& a, double c) {
  Symbol out = a;
  switch (a.kind()) {
    case SymbolKind::constant:
      out = Symbol::constant(a.constant_value() + c, a.dim());
      break;
    case SymbolKind::polynomial: {
      std::vector<ZTerm> t = a.z_terms();
      t.push_back({std::vector<int>(a.dim(), 0), std::vector<int>(a.dim(), 0), c});
      out = Symbol::polynomial(std::move(t), a.dim());
      break;
    }
    case SymbolKind::radial: {
      auto g = *a.radial_profile();
      out = Symbol::radial([g, c](double r2) { return g(r2) + c; }, a.dim());
      break;
    }
    default:
      out = wrap_generic(
          a, [a, c](std::span<const double> z, double h) { return std::max(0.0, a(z, h) + c); },
          a.h_dependent());
      break;
  }
  out = out.with_id(a.id()).with_floor(a.floor() + c);
  if (a.semiclassical()) out = out.with_semiclassical(*a.semiclassical());
  return out;
}

Symbol minus_floor(const Symbol& a) {
  if (a.floor() == 0.0) return a;
  return plus_constant(a, -a.floor()).with_floor(0.0);
}

}  // namespace antiwick
