#include "rarebasis/commands.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "rarebasis/report.hpp"

namespace rarebasis {

namespace {

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

Window require_window(const ExperimentConfig& config, std::size_t n) {
  if (!config.window) throw ConfigError("window required");
  if (config.window->dimension() == 1 && n > 1) {
    return Window::uniform(n, config.window->lo(0), config.window->hi(0));
  }
  if (config.window->dimension() != n) throw ConfigError("window dimension mismatch");
  return *config.window;
}

std::vector<Tuple> config_scales(const ExperimentConfig& config, std::size_t n,
                                 std::int64_t k) {
  std::vector<Tuple> sequences;
  for (std::size_t j = 1; j <= n; ++j) {
    auto it = config.scales.find(j);
    if (it == config.scales.end()) return {};
    if (it->second.size() != static_cast<std::size_t>(k) + 1) {
      throw ConfigError("scales" + std::to_string(j) + " must list k+1 values");
    }
    sequences.push_back(it->second);
  }
  return sequences;
}

/// Window from explicit config or derived from the scale ranges. When both
/// exist the window must cover the scales.
Window effective_window(const ExperimentConfig& config, const std::vector<Tuple>& sequences) {
  if (config.window) {
    const Window w = require_window(config, sequences.size());
    for (std::size_t j = 0; j < sequences.size(); ++j) {
      if (w.lo(j) > sequences[j].front() || w.hi(j) < sequences[j].back()) {
        throw ConfigError("window does not cover the scale sequences");
      }
    }
    return w;
  }
  std::vector<std::array<std::int64_t, 2>> ranges;
  for (const Tuple& seq : sequences) ranges.push_back({seq.front(), seq.back()});
  return Window(std::move(ranges));
}

OmegaSet config_omega(const ExperimentConfig& config, std::size_t n, std::int64_t k) {
  if (!config.omega_tuples.empty()) return omega_subset(n, k, config.omega_tuples);
  if (config.omega_monotone) return monotone_tuples(n, k);
  return enumerate_compositions(n, k);
}

void oracle_cross_check(VerificationReport& report, const ExtremalConfig& ex,
                        const SpectrumFamily& family, const Window& window,
                        const OmegaSet& omega, std::int64_t guard, unsigned threads) {
  const std::int64_t span = ex.total_span_bits();
  if (!ex.materialized() || span > 62 || (std::int64_t{1} << span) > guard) {
    report.oracle_note = "grid guard exceeded; analytic engine only";
    return;
  }
  const CompletenessResult comp = completeness(family, ex.sequences(), omega, window);
  const GridMask mask = grid_union(ex, comp.realized, guard);
  report.oracle_union_match = mask.measure() == report.union_measure;
  std::map<Tuple, Shape> shapes(comp.witness.begin(), comp.witness.end());
  const ContainmentReport creport = check_containment(ex, comp.realized, shapes, guard, threads);
  report.containment_ok = creport.ok;
  report.oracle_note = "cells=" + std::to_string(mask.total_cells());
}

int verification_exit(const VerificationReport& report) {
  bool ok = report.pass;
  if (report.oracle_union_match) ok = ok && *report.oracle_union_match;
  if (report.containment_ok) ok = ok && *report.containment_ok;
  return ok ? 0 : 1;
}

std::string render_report(const VerificationReport& report, Format format) {
  if (format == Format::Text) return verification_text(report);
  return dump(to_json(report));
}

}  // namespace

CommandResult cmd_spectrum(const ExperimentConfig& config, Format format) {
  const SpectrumFamily family = build_family(config);
  const Window window = require_window(config, family.dimension());
  const auto tuples = family.enumerate(window);
  CommandResult result;
  if (format == Format::Json) {
    Json j;
    j["family"] = family.to_string();
    j["window"] = window.to_string();
    j["count"] = tuples.size();
    Json arr = Json::array();
    for (const Tuple& t : tuples) arr.push_back(t);
    j["tuples"] = arr;
    result.output = dump(j);
  } else {
    std::ostringstream out;
    for (const Tuple& t : tuples) {
      for (std::size_t j = 0; j < t.size(); ++j) {
        out << (j ? (format == Format::Csv ? "," : " ") : "") << t[j];
      }
      out << "\n";
    }
    result.output = out.str();
  }
  return result;
}

CommandResult cmd_density(const ExperimentConfig& config, Format format) {
  const SpectrumFamily family = build_family(config);
  const std::size_t n = family.dimension();
  const Window window = require_window(config, n);
  std::vector<std::int64_t> budgets = config.budgets;
  budgets.resize(n, 0);
  const auto tuples = family.enumerate(window);
  const DensityReport report = is_dense(tuples, target_sets(config, family), window, budgets);
  CommandResult result;
  result.exit_code = report.dense ? 0 : 1;
  result.output = format == Format::Json ? dump(to_json(report)) : report.to_text();
  return result;
}

CommandResult cmd_extract(const ExperimentConfig& config, Format format) {
  const SpectrumFamily family = build_family(config);
  const std::size_t n = family.dimension();
  if (!config.k) throw ConfigError("extract requires k");
  const Window window = require_window(config, n);
  const ExtractionResult extraction = extract_sequences(
      family, target_sets(config, family), static_cast<std::size_t>(*config.k), window);
  CommandResult result;
  result.exit_code = extraction.ok ? 0 : 2;
  if (format == Format::Json) {
    result.output = dump(to_json(extraction));
  } else {
    std::ostringstream out;
    if (extraction.ok) {
      for (std::size_t j = 0; j < extraction.sequences.size(); ++j) {
        out << "scales" << j + 1 << " ";
        for (std::int64_t v : extraction.sequences[j]) out << v << " ";
        out << "(net " << extraction.net_constants[j] << ")\n";
      }
    } else {
      out << "extraction failed: " << extraction.error << " (coordinate "
          << extraction.blocking_coord << ")\n";
    }
    result.output = out.str();
  }
  return result;
}

CommandResult cmd_verify(const ExperimentConfig& config, Format format) {
  const SpectrumFamily family = build_family(config);
  const std::size_t n = family.dimension();
  if (config.n && *config.n != n) throw ConfigError("n does not match the family dimension");

  // Omega-schedule form: one report per (k_j, omega mode) item.
  if (!config.schedule.empty()) {
    const Window window = require_window(config, n);
    std::vector<OmegaScheduleItem> items;
    for (const auto& [kj, mode] : config.schedule) {
      OmegaScheduleItem item;
      item.k = kj;
      item.omega = mode == "monotone" ? monotone_tuples(n, kj) : enumerate_compositions(n, kj);
      items.push_back(std::move(item));
    }
    const auto reports =
        omega_schedule_run(family, target_sets(config, family), items, window);
    CommandResult result;
    bool all_pass = true;
    if (format == Format::Json) {
      Json arr = Json::array();
      for (const auto& r : reports) arr.push_back(to_json(r));
      result.output = dump(arr);
    } else {
      std::string out;
      for (const auto& r : reports) out += verification_text(r) + "\n";
      result.output = out;
    }
    for (const auto& r : reports) all_pass = all_pass && r.pass;
    result.exit_code = all_pass ? 0 : 1;
    return result;
  }

  VerificationReport report;
  ExtremalConfig ex;
  OmegaSet omega;
  Window window;
  if (config.alpha) {
    window = require_window(config, n);
    const std::int64_t k = std::max<std::int64_t>(static_cast<std::int64_t>(n),
                                                  ceil_log2_inverse(*config.alpha));
    const ExtractionResult extraction = extract_sequences(
        family, target_sets(config, family), static_cast<std::size_t>(k), window);
    if (!extraction.ok) {
      throw ExtractionError(extraction.error + " (coordinate " +
                            std::to_string(extraction.blocking_coord) + ")");
    }
    ex = build_extremal(extraction.sequences);
    omega = enumerate_compositions(n, k);
    report = verify_superlevel_bound(ex, omega, family, window);
    attach_alpha_constant(report, *config.alpha);
  } else if (config.k) {
    const std::int64_t k = *config.k;
    std::vector<Tuple> sequences = config_scales(config, n, k);
    if (sequences.empty()) {
      window = require_window(config, n);
      const ExtractionResult extraction = extract_sequences(
          family, target_sets(config, family), static_cast<std::size_t>(k), window);
      if (!extraction.ok) {
        throw ExtractionError(extraction.error + " (coordinate " +
                              std::to_string(extraction.blocking_coord) + ")");
      }
      sequences = extraction.sequences;
    }
    ex = build_extremal(sequences);
    window = effective_window(config, sequences);
    omega = config_omega(config, n, k);
    report = verify_superlevel_bound(ex, omega, family, window);
  } else {
    throw ConfigError("verify requires k or alpha");
  }

  oracle_cross_check(report, ex, family, window, omega, config.guard, config.threads);
  CommandResult result;
  result.exit_code = verification_exit(report);
  result.output = render_report(report, format);
  return result;
}

CommandResult cmd_sweep(const ExperimentConfig& config, Format format) {
  if (!config.n) throw ConfigError("sweep requires n");
  const std::size_t n = *config.n;
  if (!config.kmin || !config.kmax) throw ConfigError("sweep requires kmin and kmax");
  std::vector<std::int64_t> gaps = config.gaps;
  gaps.resize(n, 1);
  for (std::int64_t g : gaps) {
    if (g < 1) throw ConfigError("gaps must be >= 1");
  }

  struct Row {
    std::int64_t k;
    std::size_t card = 0;
    Dyadic union_measure;
    Dyadic ratio;
    std::string error;
  };
  std::vector<Row> rows;
  std::vector<double> xs, ys;
  for (std::int64_t k = *config.kmin; k <= *config.kmax; ++k) {
    Row row{k, 0, Dyadic(), Dyadic(), ""};
    try {
      std::vector<Tuple> sequences;
      for (std::size_t j = 0; j < n; ++j) {
        Tuple seq;
        for (std::int64_t m = 0; m <= k; ++m) seq.push_back(m * gaps[j]);
        sequences.push_back(std::move(seq));
      }
      const ExtremalConfig ex = build_extremal(sequences);
      const OmegaSet omega = config_omega(config, n, k);
      row.card = omega.tuples.size();
      row.union_measure = union_level_set_measure(ex, omega);
      row.ratio = row.union_measure.div_pow2(k + ex.e_measure().exponent());
      xs.push_back(std::log(static_cast<double>(k)));
      ys.push_back(std::log(row.ratio.to_double()));
    } catch (const std::exception& err) {
      row.error = err.what();
    }
    rows.push_back(std::move(row));
  }

  // Least-squares slope of log(ratio) against log(k); display-only doubles.
  double slope = 0.0;
  if (xs.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    const double m = static_cast<double>(xs.size());
    slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  }

  CommandResult result;
  if (format == Format::Json) {
    Json arr = Json::array();
    for (const Row& row : rows) {
      Json j;
      j["k"] = row.k;
      if (row.error.empty()) {
        j["card_omega"] = row.card;
        j["union_measure"] = json_value(row.union_measure);
        j["achieved_ratio"] = json_value(row.ratio);
      } else {
        j["error"] = row.error;
      }
      arr.push_back(j);
    }
    result.output = dump(Json{{"rows", arr}, {"loglog_slope", slope}});
  } else {
    std::ostringstream out;
    out << "k,card_omega,union_measure,achieved_ratio\n";
    for (const Row& row : rows) {
      if (row.error.empty()) {
        out << row.k << "," << row.card << "," << row.union_measure.to_decimal() << ","
            << row.ratio.to_decimal() << "\n";
      } else {
        out << row.k << ",error," << row.error << ",\n";
      }
    }
    out << "slope,,," << format_double(slope) << "\n";
    result.output = out.str();
  }
  return result;
}

CommandResult cmd_oracle_check(const ExperimentConfig& config, Format format) {
  if (!config.k) throw ConfigError("oracle-check requires k");
  std::size_t n = config.n.value_or(0);
  if (n == 0) {
    for (const auto& [j, seq] : config.scales) n = std::max(n, j);
    if (n == 0) throw ConfigError("oracle-check requires scales");
  }
  const std::vector<Tuple> sequences = config_scales(config, n, *config.k);
  if (sequences.empty()) throw ConfigError("oracle-check requires scales for every axis");
  const ExtremalConfig ex = build_extremal(sequences);

  SpectrumFamily family = config.family_kind
                              ? build_family(config)
                              : SpectrumFamily::full_product(std::vector<IntSet>(n, IntSet::all()));
  const Window window = effective_window(config, sequences);
  const OmegaSet omega = config_omega(config, n, *config.k);

  const CompletenessResult comp = completeness(family, ex.sequences(), omega, window);
  const Dyadic analytic = union_level_set_measure(ex, comp.realized);
  const GridMask mask = grid_union(ex, comp.realized, config.guard);
  const bool equal = mask.measure() == analytic;
  std::map<Tuple, Shape> shapes(comp.witness.begin(), comp.witness.end());
  const ContainmentReport containment =
      check_containment(ex, comp.realized, shapes, config.guard, config.threads);

  if (config.mask_out) {
    std::ofstream out(*config.mask_out);
    if (!out) throw ConfigError("cannot open mask output path");
    mask.export_rle(out);
  }

  CommandResult result;
  result.exit_code = (equal && containment.ok) ? 0 : 1;
  if (format == Format::Json) {
    Json j;
    j["analytic_union"] = json_value(analytic);
    j["grid_union"] = json_value(mask.measure());
    j["union_match"] = equal;
    j["containment"] = to_json(containment);
    j["realized"] = comp.realized.tuples.size();
    result.output = dump(j);
  } else {
    std::ostringstream out;
    out << "analytic_union " << analytic.to_decimal() << "\n";
    out << "grid_union " << mask.measure().to_decimal() << "\n";
    out << "union_match " << (equal ? "yes" : "NO") << "\n";
    out << "containment " << (containment.ok ? "ok" : "FAIL") << "\n";
    result.output = out.str();
  }
  return result;
}

CommandResult cmd_is_check(const ExperimentConfig& config, Format format) {
  if (config.shapes.empty()) throw ConfigError("is-check requires shapes");
  const IsPropertyReport report =
      is_property_check(config.shapes, build_predicate(config));
  CommandResult result;
  result.exit_code = report.pass ? 0 : 1;
  result.output = format == Format::Json ? dump(to_json(report)) : report.to_text();
  return result;
}

CommandResult cmd_complete(const ExperimentConfig& config, Format format) {
  const SpectrumFamily family = build_family(config);
  const std::size_t n = family.dimension();
  if (!config.k) throw ConfigError("complete requires k");
  const std::int64_t k = *config.k;
  std::vector<Tuple> sequences = config_scales(config, n, k);
  Window window;
  if (sequences.empty()) {
    window = require_window(config, n);
    const ExtractionResult extraction = extract_sequences(
        family, target_sets(config, family), static_cast<std::size_t>(k), window);
    if (!extraction.ok) {
      throw ExtractionError(extraction.error + " (coordinate " +
                            std::to_string(extraction.blocking_coord) + ")");
    }
    sequences = extraction.sequences;
  } else {
    window = effective_window(config, sequences);
  }
  const OmegaSet omega = config_omega(config, n, k);
  const CompletenessResult comp = completeness(family, sequences, omega, window);
  CommandResult result;
  result.exit_code = comp.complete ? 0 : 1;
  if (format == Format::Json) {
    Json j = to_json(comp);
    j["sequences"] = sequences;
    result.output = dump(j);
  } else {
    std::ostringstream out;
    out << "realized " << comp.realized.tuples.size() << "/"
        << comp.realized.tuples.size() + comp.unrealized.size() << "\n";
    out << "complete " << (comp.complete ? "yes" : "no") << "\n";
    result.output = out.str();
  }
  return result;
}

CommandResult run_command(const std::string& verb, const ExperimentConfig& config,
                          Format format) {
  try {
    if (verb == "spectrum") return cmd_spectrum(config, format);
    if (verb == "density") return cmd_density(config, format);
    if (verb == "extract") return cmd_extract(config, format);
    if (verb == "verify") return cmd_verify(config, format);
    if (verb == "sweep") return cmd_sweep(config, format);
    if (verb == "oracle-check") return cmd_oracle_check(config, format);
    if (verb == "is-check") return cmd_is_check(config, format);
    if (verb == "complete") return cmd_complete(config, format);
    return CommandResult{2, "error: unknown command: " + verb + "\n"};
  } catch (const std::exception& err) {
    return CommandResult{2, std::string("error: ") + err.what() + "\n"};
  }
}

}  // namespace rarebasis
