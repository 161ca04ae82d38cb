#include "rarebasis/spectrum.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace rarebasis {

namespace {

std::int64_t nearest_distance(const std::vector<std::int64_t>& sorted, std::int64_t x) {
  // INT64_MAX when sorted is empty.
  if (sorted.empty()) return INT64_MAX;
  auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
  std::int64_t best = INT64_MAX;
  if (it != sorted.end()) best = std::min(best, *it - x);
  if (it != sorted.begin()) best = std::min(best, x - *(it - 1));
  return best;
}

std::vector<std::int64_t> sorted_unique(std::vector<std::int64_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

Window::Window(std::vector<std::array<std::int64_t, 2>> r) : ranges(std::move(r)) {
  for (const auto& range : ranges) {
    if (range[0] > range[1]) throw std::invalid_argument("Window: lo > hi");
  }
}

Window Window::uniform(std::size_t dimension, std::int64_t lo, std::int64_t hi) {
  return Window(std::vector<std::array<std::int64_t, 2>>(dimension, {lo, hi}));
}

std::string Window::to_string() const {
  std::string s;
  for (std::size_t j = 0; j < ranges.size(); ++j) {
    if (j) s += ",";
    s += std::to_string(ranges[j][0]) + ":" + std::to_string(ranges[j][1]);
  }
  return s;
}

SpectrumFamily SpectrumFamily::full_product(std::vector<IntSet> sets) {
  if (sets.empty()) throw std::invalid_argument("full_product: empty set list");
  SpectrumFamily f(Kind::FullProduct, sets.size());
  f.sets_ = std::move(sets);
  return f;
}

SpectrumFamily SpectrumFamily::soria(IntSet gamma) {
  SpectrumFamily f(Kind::Soria, 3);
  f.sets_ = {IntSet::all(), IntSet::all()};
  f.gamma_ = std::move(gamma);
  f.indices_ = {2};
  f.sign_ = -1;
  return f;
}

SpectrumFamily SpectrumFamily::zygmund(IntSet gamma) {
  SpectrumFamily f(Kind::Zygmund, 3);
  f.sets_ = {IntSet::all(), IntSet::all()};
  f.gamma_ = std::move(gamma);
  f.indices_ = {2};
  f.sign_ = 1;
  return f;
}

SpectrumFamily SpectrumFamily::cordoba(IntSet gamma) {
  SpectrumFamily f(Kind::Cordoba, 3);
  f.sets_ = {IntSet::all(), IntSet::all()};
  f.gamma_ = std::move(gamma);
  f.indices_ = {1, 2};
  f.sign_ = 1;
  return f;
}

SpectrumFamily SpectrumFamily::linear_relation(std::vector<IntSet> head_sets, IntSet gamma,
                                               std::vector<int> indices, int sign) {
  if (head_sets.empty()) throw std::invalid_argument("linear_relation: empty head sets");
  if (sign != 1 && sign != -1) throw std::invalid_argument("linear_relation: sign must be +1/-1");
  const std::size_t n = head_sets.size() + 1;
  std::sort(indices.begin(), indices.end());
  if (indices.empty() || indices.front() < 1 ||
      indices.back() > static_cast<int>(n) - 1 ||
      std::adjacent_find(indices.begin(), indices.end()) != indices.end()) {
    throw std::invalid_argument("linear_relation: bad index list");
  }
  SpectrumFamily f(Kind::LinearRelation, n);
  f.sets_ = std::move(head_sets);
  f.gamma_ = std::move(gamma);
  f.indices_ = std::move(indices);
  f.sign_ = sign;
  return f;
}

SpectrumFamily SpectrumFamily::theta_table(std::vector<IntSet> head_sets,
                                           std::vector<ThetaEntry> entries) {
  if (head_sets.empty()) throw std::invalid_argument("theta_table: empty head sets");
  const std::size_t n = head_sets.size() + 1;
  for (const auto& e : entries) {
    if (e.prefix.size() != n - 1) throw std::invalid_argument("theta_table: bad prefix length");
  }
  SpectrumFamily f(Kind::ThetaTable, n);
  f.sets_ = std::move(head_sets);
  f.theta_entries_ = std::move(entries);
  return f;
}

SpectrumFamily SpectrumFamily::explicit_tuples(std::size_t dimension, std::vector<Tuple> tuples) {
  if (dimension == 0) throw std::invalid_argument("explicit_tuples: dimension 0");
  for (const auto& t : tuples) {
    if (t.size() != dimension) throw std::invalid_argument("explicit_tuples: bad tuple length");
  }
  std::sort(tuples.begin(), tuples.end());
  tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
  SpectrumFamily f(Kind::Explicit, dimension);
  f.tuples_ = std::move(tuples);
  return f;
}

std::string SpectrumFamily::to_string() const {
  switch (kind_) {
    case Kind::FullProduct: {
      std::string s = "fullproduct(";
      for (std::size_t j = 0; j < sets_.size(); ++j) {
        if (j) s += "; ";
        s += sets_[j].to_string();
      }
      return s + ")";
    }
    case Kind::Soria:
      return "soria(" + gamma_->to_string() + ")";
    case Kind::Zygmund:
      return "zygmund(" + gamma_->to_string() + ")";
    case Kind::Cordoba:
      return "cordoba(" + gamma_->to_string() + ")";
    case Kind::LinearRelation: {
      std::string s = "linear(gamma=" + gamma_->to_string() + "; sign=";
      s += sign_ > 0 ? "+" : "-";
      s += "; indices=";
      for (std::size_t i = 0; i < indices_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(indices_[i]);
      }
      return s + ")";
    }
    case Kind::ThetaTable:
      return "theta(" + std::to_string(theta_entries_.size()) + " entries)";
    case Kind::Explicit:
      return "explicit(" + std::to_string(tuples_.size()) + " tuples)";
  }
  return "";
}

const IntSet& SpectrumFamily::head_set(std::size_t j) const { return sets_.at(j); }

bool SpectrumFamily::section_uniform(std::size_t j) const {
  switch (kind_) {
    case Kind::FullProduct:
      return true;
    case Kind::Soria:
    case Kind::Zygmund:
    case Kind::Cordoba:
    case Kind::LinearRelation:
      return j + 1 < dimension_;
    case Kind::ThetaTable:
    case Kind::Explicit:
      return false;
  }
  return false;
}

std::vector<std::int64_t> SpectrumFamily::section(std::span<const std::int64_t> prefix,
                                                  std::int64_t lo, std::int64_t hi) const {
  const std::size_t j = prefix.size();
  if (j >= dimension_) throw std::invalid_argument("section: prefix too long");
  switch (kind_) {
    case Kind::FullProduct:
      return sets_[j].enumerate(lo, hi);
    case Kind::Soria:
    case Kind::Zygmund:
    case Kind::Cordoba:
    case Kind::LinearRelation: {
      if (j + 1 < dimension_) return head_set(j).enumerate(lo, hi);
      std::int64_t shift = 0;  // w_n = gamma + shift
      for (int idx : indices_) shift += prefix[static_cast<std::size_t>(idx) - 1];
      shift *= sign_;
      std::vector<std::int64_t> out = gamma_->enumerate(lo - shift, hi - shift);
      for (auto& v : out) v += shift;
      return out;
    }
    case Kind::ThetaTable: {
      std::vector<std::int64_t> out;
      for (const auto& e : theta_entries_) {
        bool match = true;
        for (std::size_t i = 0; match && i < e.prefix.size(); ++i) {
          if (!sets_[i].contains(e.prefix[i])) match = false;
        }
        for (std::size_t i = 0; match && i < j; ++i) {
          if (e.prefix[i] != prefix[i]) match = false;
        }
        if (!match) continue;
        const std::int64_t v = (j + 1 < dimension_) ? e.prefix[j] : e.value;
        if (v >= lo && v <= hi) out.push_back(v);
      }
      return sorted_unique(std::move(out));
    }
    case Kind::Explicit: {
      std::vector<std::int64_t> out;
      for (const auto& t : tuples_) {
        bool match = true;
        for (std::size_t i = 0; match && i < j; ++i) {
          if (t[i] != prefix[i]) match = false;
        }
        if (!match) continue;
        if (t[j] >= lo && t[j] <= hi) out.push_back(t[j]);
      }
      return sorted_unique(std::move(out));
    }
  }
  return {};
}

std::vector<Tuple> SpectrumFamily::project(std::size_t j, const Window& window) const {
  if (j > dimension_) throw std::invalid_argument("project: j exceeds dimension");
  if (window.dimension() < j) throw std::invalid_argument("project: window too short");
  std::vector<Tuple> prefixes = {Tuple{}};
  for (std::size_t level = 0; level < j; ++level) {
    std::vector<Tuple> next;
    for (const Tuple& p : prefixes) {
      const auto values = section(p, window.lo(level), window.hi(level));
      for (std::int64_t v : values) {
        Tuple q = p;
        q.push_back(v);
        next.push_back(std::move(q));
      }
    }
    prefixes = std::move(next);
  }
  return prefixes;  // lexicographic by construction (sections are sorted)
}

std::vector<Tuple> SpectrumFamily::enumerate(const Window& window) const {
  if (window.dimension() != dimension_) {
    throw std::invalid_argument("enumerate: window dimension mismatch");
  }
  return project(dimension_, window);
}

std::vector<Tuple> spectrum_window(const SpectrumFamily& family, const Window& window) {
  return family.enumerate(window);
}

bool is_net_1d(std::span<const std::int64_t> w, std::span<const std::int64_t> s,
               std::int64_t lo, std::int64_t hi, std::int64_t budget) {
  if (budget < 0) throw std::invalid_argument("is_net_1d: negative budget");
  const std::vector<std::int64_t> wv(w.begin(), w.end());
  for (std::int64_t x : s) {
    if (x < lo || x > hi) continue;
    if (nearest_distance(wv, x) > budget) return false;
  }
  return true;
}

DensityReport is_dense(const std::vector<Tuple>& w, const std::vector<IntSet>& s,
                       const Window& window, std::span<const std::int64_t> budgets) {
  const std::size_t n = s.size();
  if (window.dimension() != n || budgets.size() != n) {
    throw std::invalid_argument("is_dense: dimension mismatch");
  }
  DensityReport report;
  report.dense = true;
  for (std::size_t j = 0; j < n; ++j) {
    DensityReport::Coord coord;
    coord.coord = j + 1;
    coord.budget = budgets[j];
    coord.achievable = true;

    // Sections of the (j+1)-coordinate projection, grouped by j-prefix.
    std::map<Tuple, std::vector<std::int64_t>> sections;
    for (const Tuple& t : w) {
      Tuple prefix(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(j));
      sections[std::move(prefix)].push_back(t[j]);
    }
    const auto targets = s[j].enumerate(window.lo(j), window.hi(j));
    for (auto& [prefix, values] : sections) {
      values = sorted_unique(std::move(values));
      coord.sections++;
      for (std::int64_t x : targets) {
        const std::int64_t d = nearest_distance(values, x);
        if (d == INT64_MAX) {
          coord.achievable = false;
          coord.failing_prefix = prefix;
          coord.failing_point = x;
          break;
        }
        if (d > coord.achieved) coord.achieved = d;
        if (d > coord.budget && !coord.failing_prefix) {
          coord.failing_prefix = prefix;
          coord.failing_point = x;
        }
      }
      if (!coord.achievable) break;
    }
    coord.pass = coord.achievable && coord.achieved <= coord.budget;
    report.dense = report.dense && coord.pass;
    report.coords.push_back(std::move(coord));
  }
  return report;
}

std::string DensityReport::to_text() const {
  std::string out;
  for (const auto& c : coords) {
    out += "coord " + std::to_string(c.coord) + ": budget=" + std::to_string(c.budget);
    if (c.achievable) {
      out += " achieved=" + std::to_string(c.achieved);
    } else {
      out += " achieved=unbounded";
    }
    out += " sections=" + std::to_string(c.sections);
    out += c.pass ? " pass" : " FAIL";
    out += "\n";
  }
  out += dense ? "dense: yes\n" : "dense: no\n";
  return out;
}

ExtractionResult extract_sequences(const SpectrumFamily& family, const std::vector<IntSet>& s,
                                   std::size_t k, const Window& window) {
  const std::size_t n = family.dimension();
  ExtractionResult result;
  if (k < 1) {
    result.error = "k must be >= 1";
    return result;
  }
  if (s.size() != n || window.dimension() != n) {
    result.error = "dimension mismatch between family, sets and window";
    return result;
  }

  for (std::size_t j = 0; j < n; ++j) {
    // Net constant over the sections indexed by the scale ranges already
    // chosen for coordinates before j.
    std::vector<Tuple> prefixes;
    if (j == 0) {
      prefixes = {Tuple{}};
    } else {
      std::vector<std::array<std::int64_t, 2>> ranges;
      for (std::size_t i = 0; i < j; ++i) {
        ranges.push_back({result.sequences[i].front(), result.sequences[i].back()});
      }
      prefixes = family.project(j, Window(std::move(ranges)));
    }
    const auto targets = s[j].enumerate(window.lo(j), window.hi(j));
    std::int64_t net = 0;
    const bool uniform = family.section_uniform(j);
    for (const Tuple& prefix : prefixes) {
      const auto taus = family.section(prefix, window.lo(j), window.hi(j));
      for (std::int64_t x : targets) {
        const std::int64_t d = nearest_distance(taus, x);
        if (d == INT64_MAX) {
          result.blocking_coord = j + 1;
          result.error = "section has no spectrum points in window";
          return result;
        }
        if (d > net) net = d;
      }
      if (uniform) break;
    }

    // Greedy left-to-right pick of 2k+1 points spaced more than the net
    // constant apart; keep the even-indexed ones.
    std::vector<std::int64_t> picked;
    for (std::int64_t v : targets) {
      if (picked.empty() || v - picked.back() > net) picked.push_back(v);
      if (picked.size() == 2 * k + 1) break;
    }
    if (picked.size() < 2 * k + 1) {
      result.blocking_coord = j + 1;
      result.error = "insufficient spaced points";
      return result;
    }
    Tuple seq;
    for (std::size_t m = 0; m <= k; ++m) seq.push_back(picked[2 * m]);
    result.sequences.push_back(std::move(seq));
    result.net_constants.push_back(net);
  }

  // Post-hoc realization check over {1..k}^n.
  std::vector<std::array<std::int64_t, 2>> ranges;
  for (std::size_t j = 0; j < n; ++j) {
    ranges.push_back({result.sequences[j].front() + 1, result.sequences[j].back()});
  }
  const auto tuples = family.enumerate(Window(std::move(ranges)));
  std::set<Tuple> realized;
  for (const Tuple& w : tuples) {
    Tuple cell(n);
    bool in_grid = true;
    for (std::size_t j = 0; j < n && in_grid; ++j) {
      const auto& seq = result.sequences[j];
      auto it = std::lower_bound(seq.begin(), seq.end(), w[j]);
      if (it == seq.end() || it == seq.begin()) in_grid = false;  // w[j] <= s_0 or > s_k
      else cell[j] = it - seq.begin();
    }
    if (in_grid) realized.insert(std::move(cell));
  }
  Tuple probe(n, 1);
  while (true) {
    if (!realized.count(probe)) result.unrealized.push_back(probe);
    std::size_t j = n;
    while (j > 0 && probe[j - 1] == static_cast<std::int64_t>(k)) {
      probe[j - 1] = 1;
      --j;
    }
    if (j == 0) break;
    probe[j - 1]++;
  }
  if (!result.unrealized.empty()) {
    result.error = "realization check failed";
    return result;
  }
  result.ok = true;
  return result;
}

std::int64_t dyadic_skeleton_exp(const BigInt& num, const BigInt& den) {
  if (num <= 0 || den <= 0) throw std::invalid_argument("dyadic_skeleton: nonpositive length");
  // Smallest e with den * 2^e >= num.
  auto holds = [&](std::int64_t e) {
    if (e >= 0) return (den << static_cast<unsigned>(e)) >= num;
    return den >= (num << static_cast<unsigned>(-e));
  };
  std::int64_t e = static_cast<std::int64_t>(boost::multiprecision::msb(num)) -
                   static_cast<std::int64_t>(boost::multiprecision::msb(den)) + 1;
  while (!holds(e)) ++e;
  while (holds(e - 1)) --e;
  return e;
}

std::int64_t dyadic_skeleton_exp(const Dyadic& value) {
  if (value.sign() <= 0) throw std::invalid_argument("dyadic_skeleton: nonpositive length");
  if (value.exponent() >= 0) {
    return dyadic_skeleton_exp(value.mantissa() << static_cast<unsigned>(value.exponent()),
                               BigInt(1));
  }
  return dyadic_skeleton_exp(value.mantissa(),
                             BigInt(1) << static_cast<unsigned>(-value.exponent()));
}

std::vector<std::int64_t> dyadic_skeleton(std::span<const Dyadic> lengths) {
  std::vector<std::int64_t> out;
  out.reserve(lengths.size());
  for (const Dyadic& l : lengths) out.push_back(dyadic_skeleton_exp(l));
  return out;
}

ThetaWindowReport theta_window_check(const SpectrumFamily& family, const Window& window) {
  if (family.kind() != SpectrumFamily::Kind::ThetaTable) {
    throw std::invalid_argument("theta_window_check: family is not a theta table");
  }
  const std::size_t n = family.dimension();
  if (window.dimension() != n) throw std::invalid_argument("theta_window_check: window mismatch");
  ThetaWindowReport report;

  const Tuple zero(n - 1, 0);
  std::map<std::int64_t, std::int64_t> base;  // index -> value at prefix 0
  std::map<Tuple, std::map<std::int64_t, std::int64_t>> by_prefix;
  for (const auto& e : family.theta_entries()) {
    bool in_window = e.value >= window.lo(n - 1) && e.value <= window.hi(n - 1);
    for (std::size_t i = 0; i < n - 1 && in_window; ++i) {
      if (e.prefix[i] < window.lo(i) || e.prefix[i] > window.hi(i)) in_window = false;
    }
    if (!in_window) continue;
    by_prefix[e.prefix][e.index] = e.value;
    if (e.prefix == zero) base[e.index] = e.value;
  }
  report.zero_prefix_present = !base.empty();
  if (report.zero_prefix_present) {
    report.base_min = INT64_MAX;
    report.base_max = INT64_MIN;
    for (const auto& [idx, v] : base) {
      report.base_min = std::min(report.base_min, v);
      report.base_max = std::max(report.base_max, v);
    }
  }
  report.spreads_comparable = report.zero_prefix_present;
  bool any_spread = false;
  report.spread_min = INT64_MAX;
  report.spread_max = INT64_MIN;
  for (const auto& [prefix, entries] : by_prefix) {
    if (prefix == zero) continue;
    bool shared = false;
    for (const auto& [idx, v] : entries) {
      auto it = base.find(idx);
      if (it == base.end()) continue;
      shared = true;
      any_spread = true;
      const std::int64_t d = v - it->second;
      report.spread_min = std::min(report.spread_min, d);
      report.spread_max = std::max(report.spread_max, d);
    }
    if (!shared) report.spreads_comparable = false;
  }
  if (!any_spread) {
    report.spread_min = 0;
    report.spread_max = 0;
  }
  report.window_consistent = report.zero_prefix_present && report.spreads_comparable;
  return report;
}

std::string ThetaWindowReport::to_text() const {
  std::string out;
  out += std::string("zero_prefix_present: ") + (zero_prefix_present ? "yes" : "no") + "\n";
  out += "base_range: [" + std::to_string(base_min) + ", " + std::to_string(base_max) + "]\n";
  out += "spread_range: [" + std::to_string(spread_min) + ", " + std::to_string(spread_max) + "]\n";
  out += std::string("window_consistent: ") + (window_consistent ? "yes" : "no") + "\n";
  return out;
}

}  // namespace rarebasis
