#include "rarebasis/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace rarebasis {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    if (tok[0] == '#') break;
    tokens.push_back(tok);
  }
  return tokens;
}

std::int64_t parse_int(const std::string& s) {
  std::size_t pos = 0;
  const std::int64_t v = std::stoll(s, &pos);
  if (pos != s.size()) throw ConfigError("bad integer: " + s);
  return v;
}

std::vector<std::int64_t> parse_ints(const std::vector<std::string>& tokens, std::size_t from) {
  std::vector<std::int64_t> out;
  for (std::size_t i = from; i < tokens.size(); ++i) out.push_back(parse_int(tokens[i]));
  return out;
}

IntSet parse_intset(const std::vector<std::string>& tokens, std::size_t from) {
  const std::vector<std::string> rest(tokens.begin() + static_cast<std::ptrdiff_t>(from),
                                      tokens.end());
  auto set = IntSet::parse(rest);
  if (!set) throw ConfigError("bad integer-set descriptor in: " + tokens[0]);
  return *set;
}

Window parse_window(const std::vector<std::string>& tokens, std::size_t from) {
  std::vector<std::array<std::int64_t, 2>> ranges;
  for (std::size_t i = from; i < tokens.size(); ++i) {
    // also accept comma-joined ranges, as the CLI flag passes them
    std::string chunk = tokens[i];
    std::replace(chunk.begin(), chunk.end(), ',', ' ');
    std::istringstream in(chunk);
    std::string r;
    while (in >> r) {
      const auto colon = r.find(':');
      if (colon == std::string::npos) throw ConfigError("bad window range: " + r);
      ranges.push_back({parse_int(r.substr(0, colon)), parse_int(r.substr(colon + 1))});
    }
  }
  if (ranges.empty()) throw ConfigError("empty window");
  return Window(std::move(ranges));
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    const std::string& key = tokens[0];
    try {
      if (key == "n") {
        cfg.n = static_cast<std::size_t>(parse_int(tokens.at(1)));
      } else if (key == "k") {
        cfg.k = parse_int(tokens.at(1));
      } else if (key == "alpha") {
        auto a = Dyadic::parse(tokens.at(1));
        if (!a) throw ConfigError("bad dyadic literal");
        cfg.alpha = *a;
      } else if (key == "family") {
        cfg.family_kind = tokens.at(1);
      } else if (key.rfind("set", 0) == 0 && key.size() > 3 && isdigit(key[3])) {
        cfg.sets.emplace(static_cast<std::size_t>(parse_int(key.substr(3))),
                         parse_intset(tokens, 1));
      } else if (key.rfind("target", 0) == 0 && key.size() > 6) {
        cfg.targets.emplace(static_cast<std::size_t>(parse_int(key.substr(6))),
                            parse_intset(tokens, 1));
      } else if (key == "gamma") {
        cfg.gamma = parse_intset(tokens, 1);
      } else if (key == "window") {
        cfg.window = parse_window(tokens, 1);
      } else if (key.rfind("scales", 0) == 0 && key.size() > 6) {
        cfg.scales.emplace(static_cast<std::size_t>(parse_int(key.substr(6))),
                           parse_ints(tokens, 1));
      } else if (key == "tuple") {
        cfg.explicit_tuples.push_back(parse_ints(tokens, 1));
      } else if (key == "theta") {
        // theta <index> : <prefix ints> : <value>
        SpectrumFamily::ThetaEntry entry;
        std::size_t i = 1;
        entry.index = parse_int(tokens.at(i++));
        if (tokens.at(i++) != ":") throw ConfigError("theta: expected ':'");
        while (i < tokens.size() && tokens[i] != ":") {
          entry.prefix.push_back(parse_int(tokens[i++]));
        }
        if (i >= tokens.size()) throw ConfigError("theta: expected ': value'");
        ++i;  // skip ':'
        entry.value = parse_int(tokens.at(i));
        cfg.theta_entries.push_back(std::move(entry));
      } else if (key == "linear-indices") {
        for (std::int64_t v : parse_ints(tokens, 1)) cfg.linear_indices.push_back(static_cast<int>(v));
      } else if (key == "linear-sign") {
        if (tokens.at(1) == "+") cfg.linear_sign = 1;
        else if (tokens.at(1) == "-") cfg.linear_sign = -1;
        else throw ConfigError("linear-sign must be + or -");
      } else if (key == "omega") {
        cfg.omega_tuples.push_back(parse_ints(tokens, 1));
      } else if (key == "omega-monotone") {
        cfg.omega_monotone = tokens.at(1) == "yes" || tokens.at(1) == "true";
      } else if (key == "schedule") {
        const std::string mode = tokens.size() > 2 ? tokens.at(2) : "full";
        if (mode != "full" && mode != "monotone") {
          throw ConfigError("schedule mode must be full or monotone");
        }
        cfg.schedule.emplace_back(parse_int(tokens.at(1)), mode);
      } else if (key == "budget") {
        cfg.budgets = parse_ints(tokens, 1);
      } else if (key == "kmin") {
        cfg.kmin = parse_int(tokens.at(1));
      } else if (key == "kmax") {
        cfg.kmax = parse_int(tokens.at(1));
      } else if (key == "gaps") {
        cfg.gaps = parse_ints(tokens, 1);
      } else if (key == "shape") {
        cfg.shapes.push_back(ShapePair{parse_int(tokens.at(1)), parse_int(tokens.at(2))});
      } else if (key == "predicate") {
        cfg.predicate_kind = tokens.at(1);
        if (cfg.predicate_kind == "sum_le") cfg.predicate_bound = parse_int(tokens.at(2));
      } else if (key == "pred-pair") {
        cfg.predicate_pairs.push_back(
            ShapePair{parse_int(tokens.at(1)), parse_int(tokens.at(2))});
      } else if (key == "guard") {
        cfg.guard = parse_int(tokens.at(1));
      } else if (key == "threads") {
        cfg.threads = static_cast<unsigned>(parse_int(tokens.at(1)));
      } else if (key == "out") {
        cfg.mask_out = tokens.at(1);
      } else if (key == "seed") {
        cfg.seed = static_cast<std::uint64_t>(parse_int(tokens.at(1)));
      } else {
        throw ConfigError("unknown key: " + key);
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& err) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + err.what());
    }
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse(in);
}

ExperimentConfig ExperimentConfig::parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

SpectrumFamily build_family(const ExperimentConfig& config) {
  if (!config.family_kind) throw ConfigError("config names no family");
  const std::string& kind = *config.family_kind;
  auto set_or_all = [&](std::size_t j) {
    auto it = config.sets.find(j);
    return it == config.sets.end() ? IntSet::all() : it->second;
  };
  auto need_gamma = [&]() {
    if (!config.gamma) throw ConfigError("family requires a gamma set");
    return *config.gamma;
  };
  if (kind == "soria") return SpectrumFamily::soria(need_gamma());
  if (kind == "zygmund") return SpectrumFamily::zygmund(need_gamma());
  if (kind == "cordoba") return SpectrumFamily::cordoba(need_gamma());
  if (kind == "fullproduct") {
    if (!config.n) throw ConfigError("fullproduct family requires n");
    std::vector<IntSet> sets;
    for (std::size_t j = 1; j <= *config.n; ++j) sets.push_back(set_or_all(j));
    return SpectrumFamily::full_product(std::move(sets));
  }
  if (kind == "linear") {
    if (!config.n) throw ConfigError("linear family requires n");
    if (config.linear_indices.empty()) throw ConfigError("linear family requires linear-indices");
    std::vector<IntSet> heads;
    for (std::size_t j = 1; j + 1 <= *config.n; ++j) heads.push_back(set_or_all(j));
    return SpectrumFamily::linear_relation(std::move(heads), need_gamma(),
                                           config.linear_indices, config.linear_sign);
  }
  if (kind == "theta") {
    if (!config.n) throw ConfigError("theta family requires n");
    if (config.theta_entries.empty()) throw ConfigError("theta family requires theta entries");
    std::vector<IntSet> heads;
    for (std::size_t j = 1; j + 1 <= *config.n; ++j) heads.push_back(set_or_all(j));
    return SpectrumFamily::theta_table(std::move(heads), config.theta_entries);
  }
  if (kind == "explicit") {
    if (!config.n) throw ConfigError("explicit family requires n");
    return SpectrumFamily::explicit_tuples(*config.n, config.explicit_tuples);
  }
  if (kind == "product2d") {
    // 2D shape family closed under intersections, crossed with a third axis
    // taken from set3 inside the window's third range.
    if (config.shapes.empty()) throw ConfigError("product2d family requires shapes");
    if (!config.window || config.window->dimension() < 3) {
      throw ConfigError("product2d family requires a 3-coordinate window");
    }
    const IntSet third = config.sets.count(3) ? config.sets.at(3) : IntSet::all();
    const auto values = third.enumerate(config.window->lo(2), config.window->hi(2));
    return SpectrumFamily::explicit_tuples(
        3, product_basis_tuples(config.shapes, values));
  }
  throw ConfigError("unknown family kind: " + kind);
}

std::vector<IntSet> target_sets(const ExperimentConfig& config, const SpectrumFamily& family) {
  const std::size_t n = family.dimension();
  std::vector<IntSet> out;
  for (std::size_t j = 1; j <= n; ++j) {
    auto it = config.targets.find(j);
    if (it != config.targets.end()) {
      out.push_back(it->second);
      continue;
    }
    switch (family.kind()) {
      case SpectrumFamily::Kind::Soria:
      case SpectrumFamily::Kind::Zygmund:
      case SpectrumFamily::Kind::Cordoba:
      case SpectrumFamily::Kind::LinearRelation:
        if (j == n) {
          if (!config.gamma) throw ConfigError("relation family requires gamma");
          out.push_back(*config.gamma);
        } else {
          auto sit = config.sets.find(j);
          out.push_back(sit == config.sets.end() ? IntSet::all() : sit->second);
        }
        break;
      default: {
        auto sit = config.sets.find(j);
        out.push_back(sit == config.sets.end() ? IntSet::all() : sit->second);
        break;
      }
    }
  }
  return out;
}

std::function<bool(std::int64_t, std::int64_t)> build_predicate(const ExperimentConfig& config) {
  if (config.predicate_kind == "any") {
    return [](std::int64_t, std::int64_t) { return true; };
  }
  if (config.predicate_kind == "sum_le") {
    const std::int64_t bound = config.predicate_bound;
    return [bound](std::int64_t p, std::int64_t q) { return p + q <= bound; };
  }
  if (config.predicate_kind == "list") {
    auto pairs = config.predicate_pairs;
    std::sort(pairs.begin(), pairs.end());
    return [pairs](std::int64_t p, std::int64_t q) {
      return std::binary_search(pairs.begin(), pairs.end(), ShapePair{p, q});
    };
  }
  throw ConfigError("unknown predicate kind: " + config.predicate_kind);
}

}  // namespace rarebasis
