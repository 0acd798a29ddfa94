#include "cli.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "padyn/builtins.hpp"
#include "padyn/errors.hpp"
#include "padyn/formats.hpp"
#include "padyn/geometry.hpp"
#include "padyn/mahler.hpp"
#include "padyn/quotient.hpp"
#include "padyn/transducer.hpp"

namespace padyn::cli {

namespace {

using Json = nlohmann::ordered_json;

// A resolved subject: a series, a transducer, or a bare function.
struct Subject {
  std::string label;
  std::optional<MahlerSeries> series;
  TransducerPtr transducer;
  std::optional<FunctionOracle> function;

  FunctionOracle oracle(int depth) const {
    if (series) return as_oracle(*series);
    if (transducer) return function_of(transducer, depth);
    return *function;
  }
};

std::vector<std::int64_t> parse_integer_list(const std::string& text) {
  std::vector<std::int64_t> values;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    try {
      std::size_t used = 0;
      values.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("bad integer '" + item + "' in coefficient list");
    }
  }
  if (values.empty()) throw InputError("empty coefficient list");
  return values;
}

Subject resolve_subject(const JobSpec& job) {
  if (job.subject_file.has_value() == job.builtin.has_value()) {
    throw InputError("give exactly one of --subject or --builtin");
  }
  if (job.subject_file) {
    const std::string text = read_text_file(*job.subject_file);
    switch (sniff_document(text)) {
      case DocumentKind::Series:
        return {*job.subject_file, parse_series(text), nullptr, std::nullopt};
      case DocumentKind::Transducer:
        return {*job.subject_file, std::nullopt, parse_transducer(text), std::nullopt};
      case DocumentKind::Unknown:
        break;
    }
    throw InputError("'" + *job.subject_file + "' is neither a series nor a transducer document");
  }

  const std::string& name = *job.builtin;
  const auto p = job.p;
  if (name == "identity") return {name, std::nullopt, builtins::identity(p), std::nullopt};
  if (name == "odometer") return {name, std::nullopt, builtins::odometer(p), std::nullopt};
  if (name == "complement") return {name, std::nullopt, builtins::complement(p), std::nullopt};
  if (name == "constant") return {name, std::nullopt, builtins::constant(p, job.letter), std::nullopt};
  if (name == "echo") return {name, std::nullopt, builtins::echo(p, job.n), std::nullopt};
  if (name == "digitwise-add") return {name, std::nullopt, builtins::digitwise_add(p), std::nullopt};
  if (name == "shift") return {name, std::nullopt, nullptr, builtins::shift(p, job.n)};
  if (name == "zero") return {name, std::nullopt, nullptr, builtins::zero(p, job.n)};
  if (name == "poly") {
    return {name, std::nullopt, nullptr, builtins::polynomial(p, parse_integer_list(job.coeffs))};
  }
  if (name == "mahler") {
    std::vector<PadicInt> coeffs;
    for (auto c : parse_integer_list(job.coeffs)) coeffs.push_back(PadicInt::make(p, job.precision, c));
    return {name, MahlerSeries(p, job.n, std::move(coeffs)), nullptr, std::nullopt};
  }
  throw InputError("unknown built-in '" + name + "'");
}

Json valuation_json(const Valuation& v) {
  return Json{{"value", v.value()}, {"exact", v.is_exact()}};
}

Json series_json(const MahlerSeries& s) {
  Json coeffs = Json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& c = s.coeffs()[i];
    coeffs.push_back({{"index", i}, {"residue", c.value()}, {"valuation", valuation_json(c.valuation())}});
  }
  return Json{{"p", s.prime()}, {"n", s.delay()}, {"K", s.precision()}, {"coefficients", coeffs}};
}

std::string word_string(const Word& w) {
  std::string s = "[";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s + "]";
}

struct Outcome {
  int code = kPass;
  Json report;
  std::string text;
};

Outcome cmd_coeffs(const JobSpec& job, const Subject& subject) {
  const MahlerSeries series = subject.series
                                  ? *subject.series
                                  : coeffs_from_oracle(subject.oracle(job.depth), job.count, job.precision);
  if (job.out) write_text_file(*job.out, format_series(series));

  std::ostringstream text;
  text << "Mahler coefficients of " << subject.label << " (p=" << series.prime()
       << ", n=" << series.delay() << ", K=" << series.precision() << ")\n";
  text << "index  residue  valuation\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& c = series.coeffs()[i];
    text << i << "  " << c.value() << "  " << c.valuation().to_string() << "\n";
  }
  Json report{{"command", "coeffs"}, {"subject", subject.label}, {"series", series_json(series)}};
  return {kPass, report, text.str()};
}

std::string status_word(Verdict v) { return to_string(v); }

Outcome cmd_check(const JobSpec& job, const Subject& subject) {
  const MahlerSeries series = subject.series
                                  ? *subject.series
                                  : coeffs_from_oracle(subject.oracle(job.depth), job.count, job.precision);
  ConditionReport result;
  if (job.which == "delay") {
    result = check_delay_conditions(series);
  } else if (job.which == "mp") {
    result = check_measure_conditions(series);
  } else if (job.which == "ergodic") {
    result = check_ergodicity_conditions(series);
  } else {
    throw InputError("--which must be delay, mp or ergodic");
  }

  std::ostringstream text;
  text << result.criterion << " conditions for " << subject.label << " (p=" << series.prime()
       << ", n=" << series.delay() << ", K=" << series.precision() << ", M=" << series.size()
       << "): " << status_word(result.verdict) << "\n";
  Json checks = Json::array();
  for (const auto& c : result.checks) {
    text << "  [" << c.condition << "] " << describe(c) << ": observed ";
    Json entry{{"condition", c.condition}, {"index", c.index}, {"index_lo", c.index_lo},
               {"requirement", describe(c)}};
    if (c.observed_valuation) {
      text << "v = " << c.observed_valuation->to_string();
      entry["required_valuation"] = c.required_valuation;
      entry["observed_valuation"] = valuation_json(*c.observed_valuation);
    }
    if (c.observed_residue) {
      text << *c.observed_residue << " mod p";
      entry["observed_residue_mod_p"] = *c.observed_residue;
    }
    text << " -> " << status_word(c.status) << "\n";
    entry["status"] = status_word(c.status);
    checks.push_back(entry);
  }
  Json report{{"command", "check"}, {"subject", subject.label}, {"criterion", result.criterion},
              {"verdict", status_word(result.verdict)}, {"series", series_json(series)},
              {"checks", checks}};
  const int code = result.verdict == Verdict::Pass   ? kPass
                   : result.verdict == Verdict::Fail ? kCriterionFail
                                                     : kInsufficientPrecision;
  return {code, report, text.str()};
}

Outcome cmd_brute(const JobSpec& job, const Subject& subject) {
  const FunctionOracle f = subject.oracle(job.depth);
  const Budget budget{job.budget};
  std::ostringstream text;
  Json report{{"command", "brute"}, {"subject", subject.label}, {"mode", job.mode},
              {"p", f.prime()}, {"n", f.delay()}, {"k_max", job.k_max}};

  if (job.mode == "mp") {
    const auto verdict = is_measure_preserving_upto(f, job.k_max, budget);
    text << "fibre sizes of F_k for " << subject.label << " (p=" << f.prime() << ", n=" << f.delay()
         << "), expected " << checked_pow(f.prime(), f.delay()) << " each\n";
    Json levels = Json::array();
    for (std::size_t i = 0; i < verdict.histograms.size(); ++i) {
      const int k = verdict.first_level + static_cast<int>(i);
      const auto& h = verdict.histograms[i];
      std::map<std::uint64_t, std::uint64_t> spread;
      for (auto c : h) ++spread[c];
      text << "  k=" << k << ": " << h.size() << " points;";
      for (auto [size, how_many] : spread) text << " " << how_many << " with " << size << " preimages;";
      text << "\n";
      levels.push_back({{"k", k}, {"counts", h}});
    }
    report["levels"] = levels;
    report["holds"] = verdict.holds;
    if (verdict.failing_level) {
      text << "criterion fails at k=" << *verdict.failing_level << ": point " << *verdict.failing_point
           << " has " << verdict.failing_count << " preimages\n";
      report["failing_level"] = *verdict.failing_level;
      report["failing_point"] = *verdict.failing_point;
      report["failing_count"] = verdict.failing_count;
    } else {
      text << "criterion holds through k=" << job.k_max << "\n";
    }
    return {verdict.holds ? kPass : kCriterionFail, report, text.str()};
  }
  if (job.mode == "cycles") {
    const auto verdict = unique_cycle_upto(f, job.k_max, budget);
    text << "cycles of the level-k endomap for " << subject.label << " (p=" << f.prime()
         << ", n=" << f.delay() << ")\n";
    Json levels = Json::array();
    for (const auto& level : verdict.levels) {
      text << "  k=" << level.level << ": " << level.cycles.size() << " cycle(s), lengths";
      Json cycles_json = Json::array();
      for (const auto& c : level.cycles) {
        text << " " << c.size();
        Json entry{{"length", c.size()}, {"start", c.front()}};
        if (c.size() <= 64) entry["points"] = c;
        cycles_json.push_back(entry);
      }
      text << "; " << level.transient_points << " transient\n";
      levels.push_back(
          {{"k", level.level}, {"transient", level.transient_points}, {"cycles", cycles_json}});
    }
    report["levels"] = levels;
    report["holds"] = verdict.holds;
    if (verdict.failing_level) {
      text << "more than one cycle at k=" << *verdict.failing_level << "\n";
      report["failing_level"] = *verdict.failing_level;
    } else {
      text << "unique cycle through k=" << job.k_max << "\n";
    }
    return {verdict.holds ? kPass : kCriterionFail, report, text.str()};
  }
  throw InputError("--mode must be mp or cycles");
}

Outcome cmd_image(const JobSpec& job, const Subject& subject) {
  const Budget budget{job.budget};
  std::string kind = job.image_kind;
  if (kind == "auto") {
    kind = (subject.transducer && subject.transducer->synchronous()) ? "family" : "function";
  }
  CoverReport cover;
  int delay = 0;
  if (kind == "function") {
    const FunctionOracle f = subject.oracle(job.depth);
    delay = f.delay();
    cover = cover_fraction(image_points_upto(f, job.k_max, budget), job.resolution, budget);
  } else if (kind == "family" || kind == "omega") {
    if (!subject.transducer) throw InputError(kind + " images need a transducer subject");
    cover = kind == "family" ? family_image(*subject.transducer, job.depth, job.resolution, budget)
                             : cover_fraction(automaton_graph(*subject.transducer, job.depth, budget),
                                              job.resolution, budget);
  } else {
    throw InputError("--image-kind must be auto, function, family or omega");
  }
  if (job.out) render_pgm(cover, *job.out);

  const std::uint64_t total = cover.side * cover.side;
  std::ostringstream text;
  text << kind << " image of " << subject.label << " (p=" << cover.p << ", n=" << delay
       << (kind == "function" ? ", K=" : ", D=") << cover.levels << ", m=" << cover.resolution
       << ")\n";
  text << "  occupied " << cover.occupied << " of " << total << " cells, fraction "
       << cover.fraction() << "\n";
  Json report{{"command", "image"}, {"subject", subject.label}, {"kind", kind}, {"p", cover.p},
              {"n", delay}, {"levels", cover.levels}, {"m", cover.resolution},
              {"occupied", cover.occupied}, {"cells", total}, {"fraction", cover.fraction()}};
  if (kind == "function") {
    // Finite-resolution density bound p^(n-m), compared exactly as a cell count.
    const bool trivial = delay >= cover.resolution;
    const std::uint64_t bound_cells =
        trivial ? total : checked_pow(cover.p, cover.resolution + delay);
    const bool within = cover.occupied <= bound_cells;
    text << "  bound p^(n-m) = " << cover.p << "^" << (delay - cover.resolution) << " ("
         << bound_cells << " cells): " << (within ? "within" : "exceeded") << "\n";
    report["bound_cells"] = bound_cells;
    report["within_bound"] = within;
  }
  return {kPass, report, text.str()};
}

Outcome cmd_transitivity(const JobSpec& job, const Subject& subject) {
  if (!subject.transducer) throw InputError("transitivity needs a transducer subject");
  const auto result = family_transitivity(*subject.transducer, job.length, job.depth, job.budget);
  std::ostringstream text;
  text << "family transitivity of " << subject.label << " at length " << result.length
       << " over " << result.states_examined << " states (depth " << result.depth << "): "
       << (result.pass ? "pass" : "fail") << "\n";
  Json report{{"command", "transitivity"}, {"subject", subject.label}, {"length", result.length},
              {"depth", result.depth}, {"states", result.states_examined}, {"pass", result.pass}};
  if (result.counterexample) {
    const auto& [u, v] = *result.counterexample;
    const auto p = subject.transducer->prime();
    text << "  no state maps u=" << word_to_residue(u, p) << " " << word_string(u)
         << " to v=" << word_to_residue(v, p) << " " << word_string(v) << "\n";
    report["counterexample"] = {{"u", word_to_residue(u, p)}, {"v", word_to_residue(v, p)},
                                {"u_word", u}, {"v_word", v}};
  }
  return {result.pass ? kPass : kCriterionFail, report, text.str()};
}

}  // namespace

int run(const JobSpec& job, std::ostream& out, std::ostream& err) {
  try {
    const Subject subject = resolve_subject(job);
    Outcome outcome;
    if (job.command == "coeffs") {
      outcome = cmd_coeffs(job, subject);
    } else if (job.command == "check") {
      outcome = cmd_check(job, subject);
    } else if (job.command == "brute") {
      outcome = cmd_brute(job, subject);
    } else if (job.command == "image") {
      outcome = cmd_image(job, subject);
    } else if (job.command == "transitivity") {
      outcome = cmd_transitivity(job, subject);
    } else {
      throw InputError("unknown command '" + job.command + "'");
    }
    outcome.report["exit_code"] = outcome.code;
    const std::string json = outcome.report.dump(2) + "\n";
    if (job.report) write_text_file(*job.report, json);
    if (job.report_format == "json") {
      out << json;
    } else {
      out << outcome.text;
    }
    return outcome.code;
  } catch (const PrecisionError& e) {
    err << "insufficient precision: " << e.what() << "\n";
    return kInsufficientPrecision;
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"padyn: automata as p-adic dynamical systems"};
  app.require_subcommand(1);
  app.fallthrough();

  JobSpec job;
  std::string subject_file, builtin;
  app.add_option("--subject", subject_file, "series or transducer document");
  app.add_option("--builtin", builtin,
                 "identity, odometer, complement, constant, echo, digitwise-add, shift, zero, "
                 "poly, mahler");
  app.add_option("--p", job.p, "prime")->capture_default_str();
  app.add_option("--n", job.n, "delay for shift, zero, echo and mahler built-ins")->capture_default_str();
  app.add_option("--coeffs", job.coeffs, "comma-separated integers for poly and mahler");
  app.add_option("--letter", job.letter, "output letter of the constant built-in");
  app.add_option("--precision", job.precision, "coefficient precision K")->capture_default_str();
  app.add_option("--count", job.count, "number of Mahler coefficients M")->capture_default_str();
  app.add_option("--kmax", job.k_max, "highest level (brute) or level count K (image)")
      ->capture_default_str();
  app.add_option("--depth", job.depth, "state and word exploration depth D")->capture_default_str();
  app.add_option("--resolution", job.resolution, "grid resolution m")->capture_default_str();
  app.add_option("--length", job.length, "word length for transitivity")->capture_default_str();
  app.add_option("--budget", job.budget, "largest table any enumeration may build")
      ->capture_default_str();
  app.add_option("--which", job.which, "delay | mp | ergodic")->capture_default_str();
  app.add_option("--mode", job.mode, "mp | cycles")->capture_default_str();
  app.add_option("--image-kind", job.image_kind, "auto | function | family | omega")
      ->capture_default_str();
  std::string out_path, report_path;
  app.add_option("--out", out_path, "series file (coeffs) or PGM image (image)");
  app.add_option("--report", report_path, "write the JSON report here");
  app.add_option("--report-format", job.report_format, "text | json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  for (const char* name : {"coeffs", "check", "brute", "image", "transitivity"}) {
    app.add_subcommand(name, "");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  job.command = app.get_subcommands().front()->get_name();
  if (!subject_file.empty()) job.subject_file = subject_file;
  if (!builtin.empty()) job.builtin = builtin;
  if (!out_path.empty()) job.out = out_path;
  if (!report_path.empty()) job.report = report_path;
  return run(job, out, err);
}

}  // namespace padyn::cli
