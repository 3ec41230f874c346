#include "cantor/density.hpp"

#include <algorithm>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

// Number of components lying entirely in [0, x] and the covered prefix w of
// the next one (0 if x falls in a gap or beyond).
struct PrefixSplit {
  std::size_t full = 0;
  Rational partial;
};

PrefixSplit split_at(const CantorApproximation& a, const Rational& x) {
  const auto& comps = a.components();
  PrefixSplit out;
  auto it = std::partition_point(comps.begin(), comps.end(),
                                 [&](const ClosedInterval& c) { return c.right <= x; });
  out.full = static_cast<std::size_t>(it - comps.begin());
  if (it != comps.end() && it->left < x) {
    out.partial = x - it->left;
  }
  return out;
}

}  // namespace

Rational prefix_measure_level(const CantorApproximation& a, const Rational& x) {
  if (x <= 0) return Rational(0);
  if (x >= 1) return a.component_length() * pow2(a.level());
  PrefixSplit s = split_at(a, x);
  return Rational(static_cast<long>(s.full)) * a.component_length() + s.partial;
}

Enclosure prefix_measure_bounds(const CantorApproximation& a, const Rational& x) {
  if (x <= 0) return Enclosure(Rational(0));
  const Rational& rN = a.component_length();
  const Enclosure& tau = a.tail_factor();
  if (x >= 1) {
    return Enclosure(tau.lo, tau.hi) * (rN * pow2(a.level()));
  }
  PrefixSplit s = split_at(a, x);
  Rational full(static_cast<long>(s.full));
  Rational lo = full * rN * tau.lo;
  Rational hi = full * rN * tau.hi;
  if (s.partial > 0) {
    Rational keep = s.partial - rN * (1 - tau.lo);
    if (keep > 0) lo += keep;
    Rational cap = rN * tau.hi;
    hi += std::min(s.partial, cap);
  }
  return Enclosure(std::move(lo), std::move(hi));
}

Enclosure phi(const CantorApproximation& a, const Rational& s) {
  if (s <= 0 || s > 1) throw DomainError("phi argument outside (0, 1]");
  return prefix_measure_bounds(a, s) / s;
}

BruteForceResult phi_bruteforce(const CantorApproximation& a, const Rational& s) {
  if (s <= 0 || s > 1) throw DomainError("window length outside (0, 1]");
  const auto& comps = a.components();
  const std::size_t count = comps.size();

  // Common denominator D for every endpoint and s: endpoints are sums of
  // r_{i-1}/2, whose denominators divide 2^(N+1) * prod den(lambda_i).
  Integer dstruct = Integer(1) << (a.level() + 1);
  for (int i = 1; i <= a.level(); ++i) dstruct *= a.sequence().lambda(i).get_den();
  Integer D;
  mpz_lcm(D.get_mpz_t(), dstruct.get_mpz_t(), s.get_den().get_mpz_t());

  auto scaled = [&D](const Rational& v) {
    Integer t;
    mpz_divexact(t.get_mpz_t(), D.get_mpz_t(), v.get_den().get_mpz_t());
    return Integer(v.get_num() * t);
  };

  Integer S = scaled(s);
  Integer rNs = scaled(a.component_length());
  Integer limit = D - S;  // largest admissible window start

  std::vector<Integer> lefts(count), rights(count);
  for (std::size_t i = 0; i < count; ++i) {
    lefts[i] = scaled(comps[i].left);
    rights[i] = lefts[i] + rNs;
  }

  // Candidate starts: endpoints and endpoints shifted left by s, clipped into
  // [0, limit]; each of the four families is already sorted.
  auto clip = [&](Integer v) {
    if (v < 0) return Integer(0);
    if (v > limit) return Integer(limit);
    return v;
  };
  std::vector<Integer> cand;
  cand.reserve(4 * count + 2);
  std::vector<Integer> fam[4];
  for (int f = 0; f < 4; ++f) fam[f].reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    fam[0].push_back(clip(lefts[i]));
    fam[1].push_back(clip(rights[i]));
    fam[2].push_back(clip(lefts[i] - S));
    fam[3].push_back(clip(rights[i] - S));
  }
  std::vector<Integer> m01, m23;
  std::merge(fam[0].begin(), fam[0].end(), fam[1].begin(), fam[1].end(), std::back_inserter(m01));
  std::merge(fam[2].begin(), fam[2].end(), fam[3].begin(), fam[3].end(), std::back_inserter(m23));
  std::merge(m01.begin(), m01.end(), m23.begin(), m23.end(), std::back_inserter(cand));
  cand.push_back(Integer(0));
  cand.push_back(limit);
  std::sort(cand.end() - 2, cand.end());
  std::inplace_merge(cand.begin(), cand.end() - 2, cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  // Exact |C_N ∩ [0, x]| over the scaled grid.
  auto prefix_scaled = [&](const Integer& x) {
    auto it = std::partition_point(rights.begin(), rights.end(),
                                   [&](const Integer& r) { return r <= x; });
    std::size_t k = static_cast<std::size_t>(it - rights.begin());
    Integer value = static_cast<long>(k) * rNs;
    if (k < count && lefts[k] < x) value += x - lefts[k];
    return value;
  };

  Integer best(-1);
  std::vector<Integer> argmax;
  for (const Integer& b : cand) {
    Integer v = prefix_scaled(b + S) - prefix_scaled(b);
    int c = cmp(v, best);
    if (c > 0) {
      best = v;
      argmax.clear();
      argmax.push_back(b);
    } else if (c == 0) {
      argmax.push_back(b);
    }
  }

  BruteForceResult out;
  out.max_value = Rational(best, D);
  out.max_value.canonicalize();
  out.witnesses.reserve(argmax.size());
  for (const Integer& b : argmax) {
    Rational w(b, D);
    w.canonicalize();
    out.witnesses.push_back(std::move(w));
  }
  return out;
}

Rational block_gap_mass(const CantorApproximation& a, int m) {
  if (m < 0 || m > a.level()) throw IndexOutOfRange("block level outside 0..level");
  const auto& r = a.r();
  return r[static_cast<std::size_t>(m)] -
         pow2(a.level() - m) * a.component_length();
}

PrefixDecomposition decompose_endpoint(const CantorApproximation& a, std::uint64_t index,
                                       int coarse_level) {
  int N = a.level();
  if (coarse_level < 1 || coarse_level > N) {
    throw IndexOutOfRange("coarse level outside 1..level");
  }
  IntervalAddress addr = IntervalAddress::from_index(index, N);
  const auto& r = a.r();
  const auto& g = a.g();

  PrefixDecomposition d;
  d.level = N;
  d.coarse_level = coarse_level;

  for (int i = 1; i < coarse_level; ++i) {
    if (addr.bits[static_cast<std::size_t>(i - 1)]) {
      d.base += r[static_cast<std::size_t>(i - 1)] / 2;
    }
  }
  d.copies = 1;
  d.gap_mass = Rational(0);
  for (int lvl = coarse_level; lvl <= N; ++lvl) {
    bool theta = addr.bits[static_cast<std::size_t>(lvl - 1)];
    d.digits.push_back(theta);
    if (theta) {
      d.copies += Integer(1) << (N - lvl);
      d.gap_mass += block_gap_mass(a, lvl) + g[static_cast<std::size_t>(lvl - 1)];
    }
  }
  d.endpoint = d.base + Rational(d.copies) * a.component_length() + d.gap_mass;

  const ClosedInterval& comp = a.components()[static_cast<std::size_t>(index)];
  if (d.endpoint != comp.right) {
    throw NumericalInconsistency("endpoint decomposition failed to reconstruct the endpoint");
  }
  return d;
}

}  // namespace cantor
