#include "dissoc/events.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "dissoc/errors.hpp"
#include "dissoc/eval.hpp"
#include "dissoc/figures.hpp"

namespace dissoc {

namespace {

std::string y_name(std::size_t i) { return "_y" + std::to_string(i); }

}  // namespace

ProbAssignment DisjointEncoding::assignment() const {
  ProbAssignment out;
  for (std::size_t i = 0; i < y_names.size(); ++i) {
    out.set(y_names[i], Prob::exact(y_probs[i]));
  }
  return out;
}

DisjointEncoding encode_disjoint(const DisjointDeclaration& decl) {
  const std::size_t k = decl.probs.size();
  if (k < 1) {
    throw DomainError(ErrorCode::prob_sum_not_one,
                      "disjoint declaration needs at least one value");
  }
  Rational sum = 0;
  for (const Rational& p : decl.probs) {
    if (p < 0) {
      throw DomainError(ErrorCode::prob_sum_not_one,
                        "disjoint declaration probabilities must be "
                        "nonnegative");
    }
    sum += p;
  }
  if (sum != 1) {
    throw DomainError(ErrorCode::prob_sum_not_one,
                      "disjoint declaration probabilities sum to " +
                          Prob::exact(sum).str() + ", expected 1");
  }

  DisjointEncoding enc;
  Rational remaining = 1;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    enc.y_names.push_back(y_name(i + 1));
    enc.y_probs.push_back(remaining == 0 ? Rational(0)
                                         : Rational(decl.probs[i] / remaining));
    remaining -= decl.probs[i];
  }
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Expr> parts;
    for (std::size_t j = 0; j < i && j + 1 < k; ++j) {
      parts.push_back(Expr::negation(Expr::variable(y_name(j + 1))));
    }
    if (i + 1 < k) {
      parts.push_back(Expr::variable(y_name(i + 1)));
    }
    enc.events.push_back(all_of(std::move(parts)));
  }
  return enc;
}

namespace {

Expr pair_event_a() {
  return Expr::disjunction(
      {Expr::conjunction({Expr::variable("_y1"), Expr::variable("_y2")}),
       Expr::variable("_y3"), Expr::variable("_y4")});
}

Expr pair_event_b() {
  return Expr::disjunction(
      {Expr::conjunction({Expr::negation(Expr::variable("_y1")),
                          Expr::variable("_y2")}),
       Expr::variable("_y3"), Expr::variable("_y5")});
}

ProbAssignment pair_assignment(const std::array<Prob, 5>& y) {
  ProbAssignment out;
  for (std::size_t i = 0; i < 5; ++i) out.set(y_name(i + 1), y[i]);
  return out;
}

struct Measured {
  Prob q_a, q_b, pab, rho;
};

Measured measure(const Expr& a, const Expr& b, const std::array<Prob, 5>& y) {
  ProbAssignment probs = pair_assignment(y);
  Measured m{eval_enumerate(a, probs), eval_enumerate(b, probs),
             eval_enumerate(Expr::conjunction({a, b}), probs),
             correlation_of(a, b, probs)};
  return m;
}

// Blend-parameter families keeping P[A] = P[B] = q along the way; lambda
// runs from the lower-rho boundary to the higher-rho one.
std::array<Prob, 5> negative_family(double q, double lambda) {
  const double t_min = std::max(0.0, 2.0 * q - 1.0);
  const double t = t_min + lambda * (q - t_min);
  const double u = 2.0 * (q - t) / (1.0 - t);
  return {Prob::approx(0.5), Prob::approx(u), Prob::approx(0.0),
          Prob::approx(t), Prob::approx(t)};
}

std::array<Prob, 5> positive_family(double q, double lambda) {
  const double t = (1.0 - lambda) * q;
  const double s = (q - t) / (1.0 - t);
  return {Prob::approx(0.0), Prob::approx(0.0), Prob::approx(s),
          Prob::approx(t), Prob::approx(t)};
}

}  // namespace

ProbAssignment CorrelatedPairSpec::probs() const {
  return pair_assignment(y_probs);
}

CorrelatedPairSpec correlated_pair(const Prob& q, const Prob& rho) {
  if (q <= Prob(0) || q >= Prob(1)) {
    throw DomainError(ErrorCode::marginal_out_of_range,
                      "marginal q = " + q.str() + " must lie in (0, 1)");
  }
  const Prob rmin = rho_min(q);
  if (rho > Prob(1) || rho < rmin) {
    throw DomainError(ErrorCode::rho_out_of_range,
                      "rho = " + rho.str() + " outside [" + rmin.str() +
                          ", 1] for q = " + q.str());
  }

  const Prob half = Prob::exact(1, 2);
  std::array<Prob, 5> y{Prob(0), Prob(0), Prob(0), Prob(0), Prob(0)};
  if (rho == Prob(1)) {
    y = {Prob(0), Prob(0), q, Prob(0), Prob(0)};
  } else if (rho == Prob(0)) {
    y = {Prob(0), Prob(0), Prob(0), q, q};
  } else if (rho == rmin && q <= half) {
    y = {half, q + q, Prob(0), Prob(0), Prob(0)};
  } else if (rho == rmin) {
    y = {half, Prob(1), Prob(0), q + q - Prob(1), q + q - Prob(1)};
  } else {
    const double qd = q.to_double();
    const double target = rho.to_double();
    const bool negative = rho < Prob(0);
    auto family = [&](double lambda) {
      return negative ? negative_family(qd, lambda)
                      : positive_family(qd, lambda);
    };
    const Expr a = pair_event_a();
    const Expr b = pair_event_b();
    double lo = 0.0;
    double hi = 1.0;
    std::array<Prob, 5> best = family(0.5);
    for (int iter = 0; iter < 80; ++iter) {
      const double mid = 0.5 * (lo + hi);
      best = family(mid);
      const double achieved = measure(a, b, best).rho.to_double();
      if (std::fabs(achieved - target) <= 1e-12) break;
      // achieved rho increases with lambda on both segments
      if (achieved < target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    y = best;
  }

  const Expr a = pair_event_a();
  const Expr b = pair_event_b();
  Measured m = measure(a, b, y);
  if (!approx_equal(m.q_a, q, 1e-9) || !approx_equal(m.q_b, q, 1e-9) ||
      !approx_equal(m.rho, rho, 1e-9)) {
    throw InvariantViolation(
        "correlated pair construction missed its targets: q = " + q.str() +
        " achieved (" + m.q_a.str() + ", " + m.q_b.str() + "), rho = " +
        rho.str() + " achieved " + m.rho.str());
  }
  return CorrelatedPairSpec{q,      rho,   y,    a,
                            b,      m.q_a, m.rho, m.pab};
}

Prob correlation_of(const Expr& a, const Expr& b,
                    const ProbAssignment& probs) {
  const Expr both = Expr::conjunction({a, b});
  const Prob pa = eval_enumerate(a, probs);
  const Prob pb = eval_enumerate(b, probs);
  const Prob pab = eval_enumerate(both, probs);
  if (pa == Prob(0) || pa == Prob(1)) {
    throw DomainError(ErrorCode::trivial_event,
                      "first event is trivial (P = " + pa.str() + ")");
  }
  if (pb == Prob(0) || pb == Prob(1)) {
    throw DomainError(ErrorCode::trivial_event,
                      "second event is trivial (P = " + pb.str() + ")");
  }
  const Prob cov = pab - pa * pb;
  const Prob var_a = pa * (Prob(1) - pa);
  const Prob var_b = pb * (Prob(1) - pb);
  if (cov.is_exact() && var_a.is_exact() && var_b.is_exact()) {
    if (cov.rational() == 0) return Prob::exact(Rational(0));
    const Rational d = var_a.rational() * var_b.rational();
    const BigInt num = numerator(d);
    const BigInt den = denominator(d);
    const BigInt snum = sqrt(num);
    const BigInt sden = sqrt(den);
    if (snum * snum == num && sden * sden == den) {
      return Prob::exact(Rational(cov.rational() / Rational(snum, sden)));
    }
  }
  const double r = cov.to_double() /
                   std::sqrt(var_a.to_double() * var_b.to_double());
  return Prob::approx(std::clamp(r, -1.0, 1.0));
}

}  // namespace dissoc
