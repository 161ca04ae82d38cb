#include "rarebasis/intset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rarebasis {

namespace {

std::int64_t isqrt_floor(std::int64_t x) {
  if (x < 0) return -1;
  std::int64_t r = static_cast<std::int64_t>(std::max(0.0, std::sqrt(static_cast<double>(x))));
  while (r > 0 && r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

}  // namespace

IntSet IntSet::all() { return IntSet(Kind::All); }

IntSet IntSet::explicit_set(std::vector<std::int64_t> values) {
  IntSet s(Kind::Explicit);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  s.values_ = std::move(values);
  return s;
}

IntSet IntSet::arithmetic(std::int64_t start, std::int64_t step) {
  if (step < 1) throw std::invalid_argument("IntSet::arithmetic: step must be >= 1");
  IntSet s(Kind::Arithmetic);
  s.a_ = start;
  s.d_ = step;
  return s;
}

IntSet IntSet::squares() { return IntSet(Kind::Squares); }

IntSet IntSet::geometric(std::int64_t base) {
  if (base < 2) throw std::invalid_argument("IntSet::geometric: base must be >= 2");
  IntSet s(Kind::Geometric);
  s.a_ = base;
  return s;
}

bool IntSet::contains(std::int64_t x) const {
  switch (kind_) {
    case Kind::All:
      return true;
    case Kind::Explicit:
      return std::binary_search(values_.begin(), values_.end(), x);
    case Kind::Arithmetic:
      return x >= a_ && (x - a_) % d_ == 0;
    case Kind::Squares: {
      const std::int64_t r = isqrt_floor(x);
      return r >= 0 && r * r == x;
    }
    case Kind::Geometric: {
      if (x < 1) return false;
      std::int64_t v = x;
      while (v % a_ == 0) v /= a_;
      return v == 1;
    }
  }
  return false;
}

std::vector<std::int64_t> IntSet::enumerate(std::int64_t lo, std::int64_t hi) const {
  std::vector<std::int64_t> out;
  if (lo > hi) return out;
  switch (kind_) {
    case Kind::All:
      out.reserve(static_cast<std::size_t>(hi - lo + 1));
      for (std::int64_t v = lo; v <= hi; ++v) out.push_back(v);
      break;
    case Kind::Explicit: {
      auto first = std::lower_bound(values_.begin(), values_.end(), lo);
      auto last = std::upper_bound(values_.begin(), values_.end(), hi);
      out.assign(first, last);
      break;
    }
    case Kind::Arithmetic: {
      std::int64_t v = a_;
      if (lo > a_) v = a_ + ((lo - a_ + d_ - 1) / d_) * d_;
      for (; v <= hi; v += d_) out.push_back(v);
      break;
    }
    case Kind::Squares: {
      std::int64_t j = 0;
      if (lo > 0) {
        j = isqrt_floor(lo);
        if (j * j < lo) ++j;
      }
      for (; j * j <= hi; ++j) out.push_back(j * j);
      break;
    }
    case Kind::Geometric: {
      std::int64_t v = 1;
      while (v < lo && v <= hi / a_) v *= a_;
      for (; v <= hi; v *= a_) {
        if (v >= lo) out.push_back(v);
        if (v > hi / a_) break;
      }
      break;
    }
  }
  return out;
}

std::string IntSet::to_string() const {
  switch (kind_) {
    case Kind::All:
      return "all";
    case Kind::Explicit: {
      std::string s = "list";
      for (std::int64_t v : values_) s += " " + std::to_string(v);
      return s;
    }
    case Kind::Arithmetic:
      return "arith " + std::to_string(a_) + " " + std::to_string(d_);
    case Kind::Squares:
      return "squares";
    case Kind::Geometric:
      return "geometric " + std::to_string(a_);
  }
  return "";
}

std::optional<IntSet> IntSet::parse(const std::vector<std::string>& tokens) {
  if (tokens.empty()) return std::nullopt;
  auto to_int = [](const std::string& s, bool* ok) -> std::int64_t {
    try {
      std::size_t pos = 0;
      std::int64_t v = std::stoll(s, &pos);
      *ok = pos == s.size();
      return v;
    } catch (...) {
      *ok = false;
      return 0;
    }
  };
  const std::string& head = tokens[0];
  bool ok = true;
  if (head == "all" && tokens.size() == 1) return all();
  if (head == "squares" && tokens.size() == 1) return squares();
  if (head == "list") {
    std::vector<std::int64_t> vals;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      vals.push_back(to_int(tokens[i], &ok));
      if (!ok) return std::nullopt;
    }
    return explicit_set(std::move(vals));
  }
  if (head == "arith" && tokens.size() == 3) {
    const std::int64_t a = to_int(tokens[1], &ok);
    if (!ok) return std::nullopt;
    const std::int64_t d = to_int(tokens[2], &ok);
    if (!ok || d < 1) return std::nullopt;
    return arithmetic(a, d);
  }
  if (head == "geometric" && tokens.size() == 2) {
    const std::int64_t b = to_int(tokens[1], &ok);
    if (!ok || b < 2) return std::nullopt;
    return geometric(b);
  }
  return std::nullopt;
}

}  // namespace rarebasis
