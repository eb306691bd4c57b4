#include "isospec/families.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

namespace isospec {

namespace {

std::string num_text(double x) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

constexpr int kDefaultInherited = 8;

std::string interval_text(const Interval& iv) {
  const std::string lo = std::isinf(iv.lo) ? "-inf" : num_text(iv.lo);
  const std::string hi = std::isinf(iv.hi) ? "inf" : num_text(iv.hi);
  return "(" + lo + ", " + hi + ")";
}

std::vector<double> level_energies(const FamilySpec& spec, int k_max) {
  std::vector<double> out;
  for (const auto& lv : predicted_spectrum(spec, k_max).levels) out.push_back(lv.energy);
  return out;
}

// eta and its derivative at one radius from the seed pair.  The value uses
// the beta difference; where that degenerates (|beta_m - beta_k| < 1e-12)
// it falls back to the Wronskian quotient.  The derivative always uses the
// Wronskian identities, which stay regular at zeros of an individual Phi.
Deriv1 eta_point(const SeedSolution& sk, const SeedSolution& sm, double r) {
  const Deriv2 uk = seed_u(sk, r);
  const Deriv2 um = seed_u(sm, r);
  const double de = sk.epsilon - sm.epsilon;
  const double w = uk.value * um.deriv - uk.deriv * um.value;
  const double wp = de * uk.value * um.value;
  const double wpp = de * (uk.deriv * um.value + uk.value * um.deriv);

  const double beta_k = -uk.deriv / uk.value;
  const double beta_m = -um.deriv / um.value;
  const double den = beta_m - beta_k;

  Deriv1 out;
  out.value = (std::abs(den) >= 1e-12) ? -(sm.epsilon - sk.epsilon) / den : -wp / w;
  out.deriv = -wpp / w + (wp / w) * (wp / w);
  return out;
}

void check_pair(const SeedSolution& sk, const SeedSolution& sm) {
  if (sk.l != sm.l) throw std::invalid_argument("seed pair: base index l differs");
  if (sk.k == sm.k) throw std::domain_error("seed pair: offsets coincide, energies must differ");
}

void check_paired_lambda(const SeedSolution& sk, const SeedSolution& sm) {
  const PairedLambdaDomain dom = paired_lambda_domain(sk.k, sm.k);
  for (const auto* s : {&sk, &sm}) {
    const Interval iv = dom.for_index(s->k);
    if (!iv.contains(s->lambda))
      throw std::domain_error("seed pair: lambda " + num_text(s->lambda) + " for k = " +
                              std::to_string(s->k) + " not in " + interval_text(iv));
  }
}

SeedSolution stage_seed_unchecked(const FamilySpec& spec, int i) {
  return make_seed_unchecked(spec.l, spec.chain[i].k, spec.chain[i].lambda);
}

// Stage fields of the chain at one radius.  state[j][i] is the field of the
// sub-chain (k_0 .. k_{j-1}, k_i); the recursion combines the two
// (j-1)-stage fields that share the prefix.  Returns state(j, j) for all j,
// i.e. each stage of the full chain, plus the combine denominators for the
// admissibility scan.
struct ChainPoint {
  std::vector<Deriv1> stages;
  double min_abs_quotient_den = 0.0;
  double max_abs_quotient = 0.0;
};

ChainPoint chain_point(const std::vector<SeedSolution>& seeds, double r) {
  const int n = static_cast<int>(seeds.size());
  std::vector<std::vector<Deriv1>> state(n);
  state[0].resize(n);
  for (int i = 0; i < n; ++i) {
    const Deriv2 u = seed_u(seeds[i], r);
    state[0][i] = Deriv1{-u.deriv / u.value,
                         // beta' = -(u''/u - (u'/u)^2)
                         -(u.deriv2 / u.value - (u.deriv / u.value) * (u.deriv / u.value))};
  }
  ChainPoint out;
  out.min_abs_quotient_den = std::numeric_limits<double>::infinity();
  out.stages.push_back(state[0][0]);
  for (int j = 1; j < n; ++j) {
    state[j].resize(n);
    for (int i = j; i < n; ++i) {
      const Deriv1 a = state[j - 1][j - 1];
      const Deriv1 b = state[j - 1][i];
      const double num = seeds[i].epsilon - seeds[j - 1].epsilon;
      const double den = b.value - a.value;
      const double q = num / den;
      state[j][i] = Deriv1{-a.value - q, -a.deriv + num * (b.deriv - a.deriv) / (den * den)};
      out.min_abs_quotient_den = std::min(out.min_abs_quotient_den, std::abs(den));
      out.max_abs_quotient = std::max(out.max_abs_quotient, std::abs(q));
    }
    out.stages.push_back(state[j][j]);
  }
  return out;
}

GridFunction normalized(const RadialGrid& grid, std::vector<double> values, double* inv_norm) {
  GridFunction f(grid, std::move(values));
  const double n = l2_norm(f);
  if (!(n > 0.0) || !std::isfinite(n))
    throw std::runtime_error("missing state: normalization failed on this grid");
  for (auto& v : f.values) v /= n;
  if (inv_norm) *inv_norm = 1.0 / n;
  return f;
}

}  // namespace

void validate_family(const FamilySpec& spec) {
  if (spec.l < 1) throw std::domain_error("family: l must be >= 1");
  const int order = spec.order();
  if (order < 1) throw std::domain_error("family: chain must contain at least one stage");
  if (order > spec.l)
    throw std::domain_error("family: order " + std::to_string(order) + " exceeds l = " +
                            std::to_string(spec.l));
  std::set<int> ks;
  for (const auto& st : spec.chain) {
    if (st.k > 0 || st.k < -(spec.l - 1))
      throw std::domain_error("family: stage k = " + std::to_string(st.k) +
                              " outside -(l-1) <= k <= 0 for l = " + std::to_string(spec.l));
    if (!ks.insert(st.k).second)
      throw std::domain_error("family: duplicate stage k = " + std::to_string(st.k));
  }
}

PartnerPotential first_order_potential(const SeedSolution& seed) {
  // Validating constructor re-run: rejects lambda outside the nodeless
  // domain even if the seed was built unchecked.
  const SeedSolution s = make_seed(seed.l, seed.k, seed.lambda);
  PartnerPotential out;
  out.family = FamilySpec{s.l, {{s.k, s.lambda}}};
  out.l_out = s.l - 1;
  out.evaluator = [s](double r) {
    const Deriv2 ph = phi(s, r);
    if (ph.value == 0.0)
      throw std::domain_error("partner potential: Phi vanishes at r = " + num_text(r));
    const double logd = ph.deriv / ph.value;
    return coulomb_potential(s.l - 1, r) - 2.0 * (ph.deriv2 / ph.value - logd * logd);
  };
  out.predicted_levels = level_energies(out.family, kDefaultInherited);
  return out;
}

double closed_form_normalization(const SeedSolution& seed) {
  const int l = seed.l;
  const int ak = -seed.k;
  const double body = std::pow(2.0 / (l - ak), 2 * l + 1) *
                      ((1.0 - seed.lambda) / pochhammer(-2.0 * l, ak)) * factorial(ak) /
                      factorial(2 * l);
  return std::sqrt(std::abs(body));
}

MissingState missing_state_1(const SeedSolution& seed, const RadialGrid& grid) {
  const SeedSolution s = make_seed(seed.l, seed.k, seed.lambda);
  std::vector<double> vals(grid.n_points);
  const double inv_nk = 1.0 / (s.l + s.k);
  for (int i = 0; i < grid.n_points; ++i) {
    const double r = grid.point(i);
    vals[i] = std::pow(r, s.l) * std::exp(-r * inv_nk) / phi(s, r).value;
  }
  MissingState st;
  st.energy = s.epsilon;
  st.psi = normalized(grid, std::move(vals), &st.numeric_constant);
  st.closed_form_constant = closed_form_normalization(s);
  return st;
}

GridFunction apply_a(const SeedSolution& seed, const GridFunction& psi, const GridFunction& dpsi) {
  if (!(psi.grid == dpsi.grid)) throw std::invalid_argument("apply_a: psi/dpsi grids differ");
  std::vector<double> out(psi.grid.n_points);
  for (int i = 0; i < psi.grid.n_points; ++i) {
    const double r = psi.grid.point(i);
    out[i] = dpsi.values[i] + beta(seed, r).value * psi.values[i];
  }
  return GridFunction(psi.grid, std::move(out));
}

SecondOrderCoefficients second_order_coefficients(const SeedSolution& seed_k,
                                                  const SeedSolution& seed_m) {
  check_pair(seed_k, seed_m);
  SecondOrderCoefficients out;
  out.d = -seed_m.epsilon - seed_k.epsilon;
  const double half_gap = 0.5 * (seed_m.epsilon - seed_k.epsilon);
  out.c = half_gap * half_gap;
  const SeedSolution sk = seed_k;
  const SeedSolution sm = seed_m;
  out.eta = [sk, sm](double r) { return eta_point(sk, sm, r); };
  const double d = out.d;
  const int l = sk.l;
  out.gamma = [sk, sm, d, l](double r) {
    const Deriv1 e = eta_point(sk, sm, r);
    return 0.5 * (e.value * e.value - e.deriv - d - 2.0 * coulomb_potential(l, r));
  };
  return out;
}

Interval PairedLambdaDomain::for_index(int k) const {
  if (k == n) return lambda_n;
  if (k == s) return lambda_s;
  throw std::invalid_argument("PairedLambdaDomain: index " + std::to_string(k) +
                              " is not part of this pair");
}

PairedLambdaDomain paired_lambda_domain(int k, int m) {
  if (k == m) throw std::domain_error("paired_lambda_domain: offsets must differ");
  PairedLambdaDomain dom;
  dom.n = std::max(k, m);  // larger offset = larger (less negative) energy
  dom.s = std::min(k, m);
  const bool n_odd = std::abs(dom.n) % 2 == 1;
  const bool s_odd = std::abs(dom.s) % 2 == 1;
  const Interval below{-std::numeric_limits<double>::infinity(), 1.0};
  const Interval above{1.0, std::numeric_limits<double>::infinity()};
  if (!n_odd && s_odd) {
    dom.lambda_n = below;
    dom.lambda_s = below;
  } else if (n_odd && !s_odd) {
    dom.lambda_n = above;
    dom.lambda_s = above;
  } else if (!n_odd && !s_odd) {
    dom.lambda_n = below;
    dom.lambda_s = above;
  } else {
    dom.lambda_n = above;
    dom.lambda_s = below;
  }
  return dom;
}

PartnerPotential second_order_potential(const SeedSolution& seed_k, const SeedSolution& seed_m) {
  check_pair(seed_k, seed_m);
  check_paired_lambda(seed_k, seed_m);
  const int l = seed_k.l;
  if (l < 2) throw std::domain_error("second order: l must be >= 2 so l_out = l-2 is valid");
  PartnerPotential out;
  out.family = FamilySpec{l, {{seed_k.k, seed_k.lambda}, {seed_m.k, seed_m.lambda}}};
  out.l_out = l - 2;
  const SeedSolution sk = seed_k;
  const SeedSolution sm = seed_m;
  // alpha = eta + (1-2l)/r absorbs the eta ~ (2l-1)/r end behavior, so the
  // evaluator tends to V_{l-2} at both ends.
  out.evaluator = [sk, sm, l](double r) {
    const Deriv1 e = eta_point(sk, sm, r);
    const double alpha_deriv = e.deriv + (2.0 * l - 1.0) / (r * r);
    return coulomb_potential(l - 2, r) + 2.0 * alpha_deriv;
  };
  out.predicted_levels = level_energies(out.family, kDefaultInherited);
  return out;
}

MissingStatePair missing_states_2(const SeedSolution& seed_k, const SeedSolution& seed_m,
                                  const RadialGrid& grid) {
  check_pair(seed_k, seed_m);
  check_paired_lambda(seed_k, seed_m);
  std::vector<double> at_k(grid.n_points), at_m(grid.n_points);
  for (int i = 0; i < grid.n_points; ++i) {
    const double r = grid.point(i);
    const Deriv2 uk = seed_u(seed_k, r);
    const Deriv2 um = seed_u(seed_m, r);
    const double w = uk.value * um.deriv - uk.deriv * um.value;
    at_k[i] = um.value / w;
    at_m[i] = uk.value / w;
  }
  const double gap = std::sqrt(std::abs(seed_k.epsilon - seed_m.epsilon));
  MissingStatePair pair;
  pair.at_eps_k.energy = seed_k.epsilon;
  pair.at_eps_k.psi = normalized(grid, std::move(at_k), &pair.at_eps_k.numeric_constant);
  pair.at_eps_k.closed_form_constant = closed_form_normalization(seed_k) * gap;
  pair.at_eps_m.energy = seed_m.epsilon;
  pair.at_eps_m.psi = normalized(grid, std::move(at_m), &pair.at_eps_m.numeric_constant);
  pair.at_eps_m.closed_form_constant = closed_form_normalization(seed_m) * gap;
  return pair;
}

GridFunction apply_b(const SeedSolution& seed_k, const SeedSolution& seed_m,
                     const GridFunction& psi) {
  check_pair(seed_k, seed_m);
  const GridFunction w1 = apply_a(seed_k, psi, central_difference(psi));
  const SeedSolution sk = seed_k;
  const SeedSolution sm = seed_m;
  const BetaField second = chain_beta([sk](double r) { return beta(sk, r); },
                                      [sm](double r) { return beta(sm, r); }, sk.epsilon,
                                      sm.epsilon);
  const GridFunction dw1 = central_difference(w1);
  std::vector<double> out(psi.grid.n_points);
  for (int i = 0; i < psi.grid.n_points; ++i)
    out[i] = dw1.values[i] + second(psi.grid.point(i)).value * w1.values[i];
  return GridFunction(psi.grid, std::move(out));
}

GridFunction apply_b_direct(const SeedSolution& seed_k, const SeedSolution& seed_m,
                            const GridFunction& psi) {
  const SecondOrderCoefficients co = second_order_coefficients(seed_k, seed_m);
  const int n = psi.grid.n_points;
  if (n < 4) throw std::invalid_argument("apply_b_direct: need at least 4 points");
  const double h = psi.grid.h;
  const auto& v = psi.values;
  const GridFunction dv = central_difference(psi);
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    double d2;
    if (i == 0)
      d2 = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / (h * h);
    else if (i == n - 1)
      d2 = (2.0 * v[n - 1] - 5.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4]) / (h * h);
    else
      d2 = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / (h * h);
    const double r = psi.grid.point(i);
    out[i] = d2 + co.eta(r).value * dv.values[i] + co.gamma(r) * v[i];
  }
  return GridFunction(psi.grid, std::move(out));
}

BetaField chain_beta(BetaField beta_a, BetaField beta_b, double eps_a, double eps_b) {
  if (eps_a == eps_b) throw std::domain_error("chain_beta: energies must differ");
  return [beta_a = std::move(beta_a), beta_b = std::move(beta_b), eps_a, eps_b](double r) {
    const Deriv1 a = beta_a(r);
    const Deriv1 b = beta_b(r);
    const double num = eps_b - eps_a;
    const double den = b.value - a.value;
    if (den == 0.0)
      throw std::domain_error("chain_beta: degenerate beta difference at r = " +
                              num_text(r));
    return Deriv1{-a.value - num / den, -a.deriv + num * (b.deriv - a.deriv) / (den * den)};
  };
}

PartnerPotential chain_potential(const FamilySpec& spec) {
  validate_family(spec);
  const int order = spec.order();
  std::vector<SeedSolution> seeds;
  for (int i = 0; i < order; ++i) seeds.push_back(stage_seed_unchecked(spec, i));

  if (order == 1) {
    make_seed(spec.l, spec.chain[0].k, spec.chain[0].lambda);  // domain check only
  } else if (order == 2) {
    check_paired_lambda(seeds[0], seeds[1]);
  } else {
    // No closed admissibility table beyond pairs: scan every combine
    // denominator and quotient on a dense log+linear mesh.  A quotient
    // blow-up marks a zero crossing of a stage denominator.
    const int n_scan = 4000;
    const double r_hi = 80.0;
    for (int i = 0; i <= n_scan; ++i) {
      const double t = static_cast<double>(i) / n_scan;
      const double r = (i < n_scan / 2)
                           ? 1e-4 * std::pow(1.0 / 1e-4, t * 2.0)
                           : 1.0 + (r_hi - 1.0) * (t - 0.5) * 2.0;
      const ChainPoint cp = chain_point(seeds, r);
      double total = 0.0;
      for (const auto& st : cp.stages) total += st.deriv;
      if (!std::isfinite(total) || cp.max_abs_quotient > 1e8)
        throw std::domain_error(
            "chain: stage denominator vanishes near r = " + num_text(r) +
            "; lambda set inadmissible for this chain");
    }
  }

  PartnerPotential out;
  out.family = spec;
  out.l_out = spec.l - order;
  const int l = spec.l;
  out.evaluator = [seeds, l](double r) {
    const ChainPoint cp = chain_point(seeds, r);
    double total = 0.0;
    for (const auto& st : cp.stages) total += st.deriv;
    return coulomb_potential(l, r) + 2.0 * total;
  };
  out.predicted_levels = level_energies(spec, kDefaultInherited);
  return out;
}

PartnerPotential family_potential(const FamilySpec& spec) {
  validate_family(spec);
  switch (spec.order()) {
    case 1:
      return first_order_potential(make_seed_unchecked(spec.l, spec.chain[0].k, spec.chain[0].lambda));
    case 2:
      return second_order_potential(stage_seed_unchecked(spec, 0), stage_seed_unchecked(spec, 1));
    default:
      return chain_potential(spec);
  }
}

PredictedSpectrum predicted_spectrum(const FamilySpec& spec, int k_max_inherited) {
  validate_family(spec);
  if (k_max_inherited < 1)
    throw std::domain_error("predicted_spectrum: k_max_inherited must be >= 1");
  PredictedSpectrum out;
  std::set<int> principals;
  for (const auto& st : spec.chain) {
    PredictedLevel lv;
    lv.principal = spec.l + st.k;
    lv.energy = factorization_energy(spec.l, st.k);
    lv.inherited = false;
    out.levels.push_back(lv);
    principals.insert(lv.principal);
  }
  for (int K = 1; K <= k_max_inherited; ++K) {
    PredictedLevel lv;
    lv.principal = spec.l + K;
    lv.energy = energy_level(spec.l, K);
    lv.inherited = true;
    out.levels.push_back(lv);
    principals.insert(lv.principal);
  }
  std::sort(out.levels.begin(), out.levels.end(),
            [](const PredictedLevel& a, const PredictedLevel& b) { return a.energy < b.energy; });
  if (!principals.empty()) {
    for (int m = *principals.begin() + 1; m < *principals.rbegin(); ++m)
      if (!principals.count(m)) out.holes.push_back(-1.0 / (static_cast<double>(m) * m));
  }
  return out;
}

}  // namespace isospec
