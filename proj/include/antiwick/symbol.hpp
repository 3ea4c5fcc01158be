#pragma once

// Phase-space symbols a(x, w) >= 0 on R^{2d}.
//
// A phase-space point is passed as a flat span z = (x_1..x_d, w_1..w_d).
// Symbols are immutable values; copies share their evaluation state.

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace antiwick {

/// Semiclassical class data (m, rho, N0) for S^m_rho symbols.
struct SemiclassicalData {
  double m = 0.0;
  double rho = 0.0;
  int n0 = 0;
};

/// c * z^alpha * conj(z)^beta with z_j = x_j + i w_j.
struct ZTerm {
  std::vector<int> alpha;
  std::vector<int> beta;
  std::complex<double> coeff;
};

/// c * x^p * w^q, a monomial of a real polynomial in phase-space coordinates.
struct XWTerm {
  std::vector<int> x_pow;
  std::vector<int> w_pow;
  double coeff;
};

enum class SymbolKind { generic, polynomial, abs_power, radial, constant };

const char* to_string(SymbolKind k) noexcept;

class Symbol {
 public:
  using Evaluator = std::function<double(std::span<const double> z, double h)>;
  /// Radial profile g with a(z) = g(|z|^2).
  using Profile = std::function<double(double s)>;

  static Symbol constant(double c, int dim = 1);
  /// Coefficient table over z^alpha conj(z)^beta. Throws ValidationError
  /// unless c_{alpha,beta} == conj(c_{beta,alpha}) (a real-valued symbol).
  static Symbol polynomial(std::vector<ZTerm> terms, int dim = 1);
  /// Real polynomial in (x, w), converted to its z-table.
  static Symbol polynomial_xw(const std::vector<XWTerm>& terms, int dim = 1);
  /// |P(x, w)|^beta. For beta < 0 evaluation on the zero set of P throws DomainError.
  static Symbol abs_power(std::vector<XWTerm> p, double beta, int dim = 1);
  /// (|x|^2 + |w|^2)^beta, the abs-power of P = |z|^2.
  static Symbol radial_power(double beta, int dim = 1);
  static Symbol radial(Profile g, int dim = 1);
  static Symbol generic(Evaluator f, int dim = 1, bool h_dependent = false);

  /// Value at z (length 2*dim). Throws DomainError on the singular set and
  /// NumericError if the evaluator produced a negative or non-finite value.
  double operator()(std::span<const double> z, double h) const;
  double at(double x, double w, double h = 1.0) const;

  int dim() const noexcept;
  int phase_dim() const noexcept { return 2 * dim(); }
  SymbolKind kind() const noexcept;
  bool h_dependent() const noexcept;
  const std::string& id() const noexcept;
  const std::optional<SemiclassicalData>& semiclassical() const noexcept;
  /// Known infimum of the symbol (0 unless declared). Used for floor-shifted
  /// comparisons of a - inf a.
  double floor() const noexcept;

  Symbol with_id(std::string id) const;
  Symbol with_semiclassical(SemiclassicalData data) const;
  Symbol with_floor(double f) const;

  /// Coefficient table (kind == polynomial), empty otherwise.
  const std::vector<ZTerm>& z_terms() const noexcept;
  /// Total degree of the z-table; 0 for other kinds.
  int polynomial_degree() const noexcept;
  /// P and beta (kind == abs_power).
  const std::vector<XWTerm>& base_polynomial() const noexcept;
  double exponent() const noexcept;
  double constant_value() const noexcept;
  /// Radial profile when the symbol is a function of |z|^2 only (d = 1
  /// radial, constant, |z|^2-power, or a z-table with alpha == beta terms).
  std::optional<Profile> radial_profile() const;

  struct State;

 private:
  explicit Symbol(std::shared_ptr<const State> s) : state_(std::move(s)) {}
  std::shared_ptr<const State> state_;

  friend Symbol make_symbol(std::shared_ptr<const State>);
};

/// a(s * z).
Symbol dilated(const Symbol& a, double s);
/// a(z - v).
Symbol translated(const Symbol& a, std::span<const double> v);
/// c * a, c >= 0.
Symbol scaled(const Symbol& a, double c);
Symbol sum(const Symbol& a, const Symbol& b);
/// a + c with the declared floor raised by c.
Symbol plus_constant(const Symbol& a, double c);
/// a - floor(a), the nonnegative symbol used for floor-shifted comparisons.
Symbol minus_floor(const Symbol& a);

double eval_xw(const std::vector<XWTerm>& p, std::span<const double> z);
std::complex<double> eval_z(const std::vector<ZTerm>& t, std::span<const double> z);

}  // namespace antiwick
