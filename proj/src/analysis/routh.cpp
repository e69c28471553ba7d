#include <algorithm>
#include <cmath>
#include <limits>

#include "sfg/analysis.hpp"
#include "sfg/error.hpp"

namespace sfg {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kStable: return "stable";
    case Verdict::kUnstable: return "unstable";
    case Verdict::kMarginal: return "marginal";
  }
  return "unknown";
}

namespace {

constexpr double kCancelTol = 1e-12;

// Truncated Laurent series sum_k c[k] * eps^(v + k). Zero has an empty c.
class EpsSeries {
 public:
  EpsSeries() = default;
  EpsSeries(double x, std::size_t terms) : terms_(terms) {
    if (x != 0.0) c_ = {x};
  }
  static EpsSeries epsilon(std::size_t terms) {
    EpsSeries e(1.0, terms);
    e.v_ = 1;
    return e;
  }

  bool is_zero() const { return c_.empty(); }
  int sign() const { return is_zero() ? 0 : (c_.front() > 0 ? 1 : -1); }
  // Value as eps -> 0+.
  double limit() const {
    if (is_zero() || v_ > 0) return 0.0;
    if (v_ == 0) return c_.front();
    return sign() * std::numeric_limits<double>::infinity();
  }

  EpsSeries operator*(double k) const {
    EpsSeries out = *this;
    for (double& x : out.c_) x *= k;
    out.normalize(std::vector<double>(out.c_.size(), 0.0));
    return out;
  }

  friend EpsSeries operator*(const EpsSeries& a, const EpsSeries& b) {
    EpsSeries out;
    out.terms_ = std::max(a.terms_, b.terms_);
    if (a.is_zero() || b.is_zero()) return out;
    out.v_ = a.v_ + b.v_;
    out.c_.assign(std::min(out.terms_, a.c_.size() + b.c_.size() - 1), 0.0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      for (std::size_t j = 0; j < b.c_.size() && i + j < out.c_.size(); ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return out;
  }

  friend EpsSeries operator-(const EpsSeries& a, const EpsSeries& b) {
    if (b.is_zero()) return a;
    EpsSeries out;
    out.terms_ = std::max(a.terms_, b.terms_);
    if (a.is_zero()) {
      out = b;
      for (double& x : out.c_) x = -x;
      return out;
    }
    out.v_ = std::min(a.v_, b.v_);
    const int top = std::max(a.v_ + static_cast<int>(a.c_.size()), b.v_ + static_cast<int>(b.c_.size()));
    const std::size_t len = std::min(out.terms_, static_cast<std::size_t>(top - out.v_));
    out.c_.assign(len, 0.0);
    std::vector<double> scale(len, 0.0);
    auto accumulate = [&](const EpsSeries& s, double sign) {
      for (std::size_t k = 0; k < s.c_.size(); ++k) {
        const int at = s.v_ + static_cast<int>(k) - out.v_;
        if (at < static_cast<int>(len)) {
          out.c_[at] += sign * s.c_[k];
          scale[at] = std::max(scale[at], std::abs(s.c_[k]));
        }
      }
    };
    accumulate(a, 1.0);
    accumulate(b, -1.0);
    out.normalize(scale);
    return out;
  }

  friend EpsSeries operator/(const EpsSeries& a, const EpsSeries& b) {
    if (b.is_zero()) throw Error(ErrorCode::kPrecondition, "Routh division by an exact zero");
    EpsSeries out;
    out.terms_ = std::max(a.terms_, b.terms_);
    if (a.is_zero()) return out;
    // 1 / b as a power series in eps, then multiply.
    std::vector<double> inv(out.terms_, 0.0);
    inv[0] = 1.0 / b.c_[0];
    for (std::size_t k = 1; k < out.terms_; ++k) {
      double acc = 0.0;
      for (std::size_t j = 1; j <= k && j < b.c_.size(); ++j) acc += b.c_[j] * inv[k - j];
      inv[k] = -acc / b.c_[0];
    }
    EpsSeries bi;
    bi.terms_ = out.terms_;
    bi.v_ = -b.v_;
    bi.c_ = std::move(inv);
    return a * bi;
  }

 private:
  // Drops leading coefficients that are cancellation noise.
  void normalize(const std::vector<double>& scale) {
    std::size_t lead = 0;
    while (lead < c_.size() && std::abs(c_[lead]) <= kCancelTol * scale[lead]) ++lead;
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
    v_ += static_cast<int>(lead);
    while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
  }

  int v_ = 0;
  std::vector<double> c_;
  std::size_t terms_ = 1;
};

}  // namespace

RouthReport routh_stability(const Poly& a) {
  const int n = a.degree();
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "Routh test needs degree >= 1");
  const double orient = a.leading() < 0 ? -1.0 : 1.0;
  const std::size_t width = static_cast<std::size_t>(n) / 2 + 1;
  const std::size_t terms = 2 * static_cast<std::size_t>(n) + 2;

  std::vector<std::vector<EpsSeries>> rows(static_cast<std::size_t>(n) + 1,
                                           std::vector<EpsSeries>(width, EpsSeries(0.0, terms)));
  for (std::size_t j = 0; j < width; ++j) {
    const int p0 = n - 2 * static_cast<int>(j);
    const int p1 = n - 1 - 2 * static_cast<int>(j);
    if (p0 >= 0) rows[0][j] = EpsSeries(orient * a[static_cast<std::size_t>(p0)], terms);
    if (p1 >= 0) rows[1][j] = EpsSeries(orient * a[static_cast<std::size_t>(p1)], terms);
  }

  RouthReport report;
  for (int i = 1; i <= n; ++i) {
    auto& row = rows[static_cast<std::size_t>(i)];
    if (i >= 2) {
      const auto& up1 = rows[static_cast<std::size_t>(i) - 1];
      const auto& up2 = rows[static_cast<std::size_t>(i) - 2];
      for (std::size_t j = 0; j + 1 < width; ++j) {
        row[j] = (up1[0] * up2[j + 1] - up2[0] * up1[j + 1]) / up1[0];
      }
    }
    const bool all_zero = std::all_of(row.begin(), row.end(), [](const EpsSeries& e) { return e.is_zero(); });
    if (all_zero) {
      // Derivative of the auxiliary polynomial built from the row above,
      // whose leading power is n - (i - 1).
      const auto& above = rows[static_cast<std::size_t>(i) - 1];
      const int p = n - (i - 1);
      for (std::size_t j = 0; j < width; ++j) row[j] = above[j] * static_cast<double>(p - 2 * static_cast<int>(j));
      report.degeneracies.push_back({RouthDegeneracy::Kind::kAuxiliaryRow, i});
    }
    if (row[0].is_zero()) {
      row[0] = EpsSeries::epsilon(terms);
      report.degeneracies.push_back({RouthDegeneracy::Kind::kEpsilon, i});
    }
  }

  for (const auto& row : rows) {
    std::vector<double> values;
    for (const auto& e : row) values.push_back(e.limit());
    report.rows.push_back(std::move(values));
    report.first_column_signs.push_back(row[0].sign());
  }
  for (std::size_t i = 1; i < report.first_column_signs.size(); ++i) {
    if (report.first_column_signs[i] != report.first_column_signs[i - 1]) ++report.sign_changes;
  }

  if (report.sign_changes > 0) {
    report.verdict = Verdict::kUnstable;
  } else if (!report.degeneracies.empty()) {
    // A zero row, or a vanishing first-column entry without a sign change,
    // puts roots on the imaginary axis.
    report.verdict = Verdict::kMarginal;
  } else {
    report.verdict = Verdict::kStable;
  }
  return report;
}

}  // namespace sfg
