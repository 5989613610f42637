#include "dissoc/figures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "dissoc/bounds.hpp"
#include "dissoc/dissociation.hpp"
#include "dissoc/errors.hpp"
#include "dissoc/eval.hpp"
#include "dissoc/events.hpp"

namespace dissoc {

namespace {

void check_marginal(const Prob& q) {
  if (q <= Prob(0) || q >= Prob(1)) {
    throw DomainError(ErrorCode::marginal_out_of_range,
                      "marginal q = " + q.str() + " must lie in (0, 1)");
  }
}

}  // namespace

Prob rho_min(const Prob& q) {
  check_marginal(q);
  const Prob qbar = Prob(1) - q;
  const Prob left = -(q / qbar);
  const Prob right = -(qbar / q);
  return left > right ? left : right;
}

Prob pab_from_rho(const Prob& rho, const Prob& q) {
  check_marginal(q);
  const Prob rmin = rho_min(q);
  if (rho > Prob(1) || rho < rmin) {
    throw DomainError(ErrorCode::rho_out_of_range,
                      "rho = " + rho.str() + " outside [" + rmin.str() +
                          ", 1] for q = " + q.str());
  }
  return rho * (q - q * q) + q * q;
}

ClosedFormPair closed_form_disjunctive(const Prob& p, const Prob& p_i,
                                       const Prob& q, const Prob& pab) {
  const Prob two(2);
  return ClosedFormPair{two * p * q - p * pab,
                        two * p_i * q - p_i * p_i * pab};
}

ClosedFormPair closed_form_conjunctive(const Prob& p, const Prob& p_i,
                                       const Prob& q, const Prob& pab) {
  const Prob two(2);
  const Prob pbar = Prob(1) - p_i;
  return ClosedFormPair{p + (Prob(1) - p) * pab,
                        p_i * p_i + two * p_i * pbar * q + pbar * pbar * pab};
}

namespace {

constexpr double kAgreementTol = 1e-9;

struct RowOracle {
  double exact_disj, upper_disj, lower_disj;
  double exact_conj, upper_conj, lower_conj;
};

// Exhaustive-enumeration route: realize the pair, build the four
// expressions and evaluate them with the generic evaluator.
RowOracle enumerate_row(const CorrelatedPairSpec& pair, const Prob& p,
                        const Prob& pi_lower_disj, const Prob& pi_upper_conj) {
  const std::string x = "_x";
  const Expr xe = Expr::variable(x);
  const Expr phi_d =
      Expr::disjunction({Expr::conjunction({xe, pair.a}),
                         Expr::conjunction({xe, pair.b})});
  const Expr phi_c = Expr::conjunction(
      {Expr::disjunction({xe, pair.a}), Expr::disjunction({xe, pair.b})});

  ProbAssignment base = pair.probs();
  base.set(x, p);

  RowOracle out{};
  out.exact_disj = eval_enumerate(phi_d, base).to_double();
  out.exact_conj = eval_enumerate(phi_c, base).to_double();

  auto bound_value = [&](const Expr& phi, const Prob& pi) {
    DissociationResult d = dissociate(phi, x);
    ProbAssignment probs = base;
    probs.set(dissociated_name(x, 1), pi);
    probs.set(dissociated_name(x, 2), pi);
    return eval_enumerate(d.dissociated, probs).to_double();
  };
  out.upper_disj = bound_value(phi_d, p);
  out.lower_disj = bound_value(phi_d, pi_lower_disj);
  out.upper_conj = bound_value(phi_c, pi_upper_conj);
  out.lower_conj = bound_value(phi_c, p);
  return out;
}

}  // namespace

SweepResult sweep_fig2(const std::vector<Prob>& p_values,
                       const std::vector<Prob>& q_values,
                       std::size_t rho_steps) {
  if (rho_steps < 2) {
    throw std::invalid_argument("sweep_fig2: rho_steps must be >= 2");
  }
  SweepResult result;
  for (const Prob& p : p_values) {
    const Prob pi_lower_disj =
        assign_symmetric(TemplateKind::disjunctive, BoundDirection::lower, p,
                         2)
            .front();
    const Prob pi_upper_conj =
        assign_symmetric(TemplateKind::conjunctive, BoundDirection::upper, p,
                         2)
            .front();
    for (const Prob& q : q_values) {
      const Prob rmin = rho_min(q);
      for (std::size_t k = 0; k < rho_steps; ++k) {
        Prob rho = rmin;
        if (k == rho_steps - 1) {
          rho = Prob(1);
        } else if (k > 0) {
          rho = rmin + (Prob(1) - rmin) *
                           Prob::exact(Rational(static_cast<long>(k),
                                                static_cast<long>(rho_steps - 1)));
        }
        const Prob pab = pab_from_rho(rho, q);

        const ClosedFormPair disj_copy = closed_form_disjunctive(p, p, q, pab);
        const ClosedFormPair disj_root =
            closed_form_disjunctive(p, pi_lower_disj, q, pab);
        const ClosedFormPair conj_copy = closed_form_conjunctive(p, p, q, pab);
        const ClosedFormPair conj_root =
            closed_form_conjunctive(p, pi_upper_conj, q, pab);

        SweepRow row{p.to_double(),
                     q.to_double(),
                     rho.to_double(),
                     pab.to_double(),
                     disj_copy.exact.to_double(),
                     disj_copy.dissociated.to_double(),
                     disj_root.dissociated.to_double(),
                     conj_copy.exact.to_double(),
                     conj_root.dissociated.to_double(),
                     conj_copy.dissociated.to_double()};

        const CorrelatedPairSpec pair = correlated_pair(q, rho);
        const RowOracle oracle =
            enumerate_row(pair, p, pi_lower_disj, pi_upper_conj);
        const double discrepancies[] = {
            std::fabs(row.exact_disj - oracle.exact_disj),
            std::fabs(row.upper_disj - oracle.upper_disj),
            std::fabs(row.lower_disj - oracle.lower_disj),
            std::fabs(row.exact_conj - oracle.exact_conj),
            std::fabs(row.upper_conj - oracle.upper_conj),
            std::fabs(row.lower_conj - oracle.lower_conj)};
        for (double d : discrepancies) {
          result.max_discrepancy = std::max(result.max_discrepancy, d);
          if (d > kAgreementTol) {
            throw InvariantViolation(
                "closed form disagrees with enumeration by " +
                std::to_string(d) + " at p = " + p.str() + ", q = " + q.str() +
                ", rho = " + rho.str());
          }
        }
        const bool ordered =
            row.lower_disj <= row.exact_disj + kAgreementTol &&
            row.exact_disj <= row.upper_disj + kAgreementTol &&
            row.lower_conj <= row.exact_conj + kAgreementTol &&
            row.exact_conj <= row.upper_conj + kAgreementTol;
        if (!ordered) {
          throw InvariantViolation("bound ordering violated at p = " +
                                   p.str() + ", q = " + q.str() + ", rho = " +
                                   rho.str());
        }
        result.rows.push_back(row);
      }
    }
  }
  return result;
}

namespace {

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "p,q,rho,pab,exact_disj,upper_disj,lower_disj,exact_conj,upper_conj,"
        "lower_conj\n";
  for (const SweepRow& r : rows) {
    os << fmt12(r.p) << ',' << fmt12(r.q) << ',' << fmt12(r.rho) << ','
       << fmt12(r.pab) << ',' << fmt12(r.exact_disj) << ','
       << fmt12(r.upper_disj) << ',' << fmt12(r.lower_disj) << ','
       << fmt12(r.exact_conj) << ',' << fmt12(r.upper_conj) << ','
       << fmt12(r.lower_conj) << '\n';
  }
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  write_sweep_csv(os, rows);
  return os.str();
}

}  // namespace dissoc
