#include "eja/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "eja/errors.hpp"
#include "eja/io.hpp"
#include "eja/norms.hpp"
#include "eja/prospector.hpp"
#include "eja/sampling.hpp"
#include "eja/sweeps.hpp"

namespace eja {

namespace {

Tolerance tolerance(const RunConfig& cfg) {
  if (!(cfg.atol >= 0) || !(cfg.rtol >= 0)) throw ArgumentError("tolerances must be nonnegative");
  return {cfg.atol, cfg.rtol};
}

double parse_exponent(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "infinity") return kInf;
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ArgumentError("bad norm exponent '" + s + "'");
  }
  if (used != s.size() || !(v >= 1)) throw ArgumentError("norm exponent must be >= 1 or 'inf', got '" + s + "'");
  return v;
}

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fmt_pair(const std::vector<double>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
  return s + ")";
}

Json config_echo(const RunConfig& cfg) {
  Json c;
  c["command"] = cfg.command;
  c["alg"] = cfg.alg;
  c["samples"] = cfg.samples;
  c["seed"] = cfg.seed;
  c["atol"] = cfg.atol;
  c["rtol"] = cfg.rtol;
  c["format"] = cfg.format;
  if (cfg.command == "prospect") {
    c["family"] = cfg.family;
    c["n"] = cfg.n;
    c["zero_diag"] = cfg.zero_diag;
    c["budget"] = cfg.budget;
    c["refine"] = cfg.refine_steps;
    if (!cfg.operand.empty()) c["operand"] = cfg.operand;
  }
  if (cfg.command == "norm") {
    c["kind"] = cfg.kind;
    c["operand"] = cfg.operand;
    c["r"] = cfg.r;
    c["s"] = cfg.s;
    c["budget"] = cfg.budget;
  }
  return c;
}

Json header(const RunConfig& cfg) {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["seed"] = cfg.seed;
  j["config"] = config_echo(cfg);
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ArgumentError("cannot write '" + path + "'");
  f << text;
}

std::string witness_path(const std::string& out) {
  return out.empty() ? std::string(kToolName) + "-witness.json" : out + ".witness.json";
}

/// "e", "2e", "-0.5e": multiples of the unit. Anything else is an element JSON file.
Element load_element_operand(const std::string& operand, const std::string& alg) {
  if (!operand.empty() && operand.back() == 'e') {
    if (alg.empty()) throw ArgumentError("operand '" + operand + "' needs --alg");
    const std::string coef = operand.substr(0, operand.size() - 1);
    double c = 1.0;
    if (!coef.empty()) {
      std::size_t used = 0;
      try {
        c = std::stod(coef, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != coef.size() || coef == "-") throw ArgumentError("bad operand '" + operand + "'");
    }
    return c * unit(share(parse_descriptor(alg)));
  }
  if (operand.empty()) throw ArgumentError("--operand is required");
  try {
    Element x = element_from_json(Json::parse(read_file(operand)));
    if (!alg.empty() && !(x.descriptor() == parse_descriptor(alg)))
      throw ArgumentError("operand algebra does not match --alg " + alg);
    return x;
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError("operand '" + operand + "': " + e.what());
  }
}

JordanFrame frame_for(const SchurMatrix& a, const std::string& alg) {
  if (alg.empty()) return standard_frame(share(AlgebraDescriptor::sym(a.n())));
  auto d = share(parse_descriptor(alg));
  if (d->rank() != a.n())
    throw ArgumentError("matrix order " + std::to_string(a.n()) + " does not match rank of " + alg);
  return standard_frame(d);
}

int guarded(const char* what, std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ArgumentError& e) {
    err << kToolName << ' ' << what << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericError& e) {
    err << kToolName << ' ' << what << ": numeric failure: " << e.what() << '\n';
    return kExitCheckFailed;
  }
}

}  // namespace

int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded("verify", err, [&] {
    RunConfig c = cfg;
    c.command = "verify";
    if (c.alg.empty()) c.alg = "sym:3";
    if (c.samples < 1) throw ArgumentError("--samples must be >= 1");
    auto d = share(parse_descriptor(c.alg));
    SweepOptions opt{c.samples, c.seed, tolerance(c), c.threads};
    const auto reports = verify_all(d, opt);

    Json doc = header(c);
    bool pass = true;
    Json checks = Json::array();
    Json failures = Json::array();
    for (const auto& r : reports) {
      pass = pass && r.pass;
      Json jr = report_to_json(r);
      if (!r.pass) failures.push_back(jr);
      jr.erase("witness");
      checks.push_back(std::move(jr));
      out << (r.pass ? "PASS " : "FAIL ") << r.check << "  worst_slack=" << fmt(r.worst_slack) << '\n';
    }
    doc["pass"] = pass;
    doc["checks"] = std::move(checks);
    const std::string text = doc.dump(2) + "\n";
    if (!c.out.empty()) write_text(c.out, text);

    if (!pass) {
      Json w = header(c);
      w["failures"] = std::move(failures);
      const std::string path = witness_path(c.out);
      write_text(path, w.dump(2) + "\n");
      out << "witness written to " << path << '\n';
      return int(kExitCheckFailed);
    }
    out << "all " << reports.size() << " checks passed on " << d->spec() << '\n';
    return int(kExitOk);
  });
}

int run_repro_example(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded("repro-example", err, [&] {
    RunConfig c = cfg;
    c.command = "repro-example";
    const JordanCounterexample ex = check_jordan_counterexample();
    out << "A = [[8, 3], [3, 0]]  B = [[0, 3], [3, 8]]\n";
    out << "lambda(|A o B|)   = " << fmt_pair(ex.abs_jordan) << '\n';
    out << "lambda(|A| o |B|) = " << fmt_pair(ex.jordan_abs) << '\n';
    out << "lambda(|A o B|) <_w lambda(|A| o |B|): " << (ex.forward.holds ? "holds" : "fails");
    if (ex.forward.failing_k) out << " at k=" << *ex.forward.failing_k;
    out << '\n';
    out << "lambda(|A| o |B|) <_w lambda(|A o B|): " << (ex.backward.holds ? "holds" : "fails");
    if (ex.backward.failing_k) out << " at k=" << *ex.backward.failing_k;
    out << '\n';
    out << (ex.report.pass ? "reproduced" : "NOT reproduced") << '\n';
    if (!c.out.empty()) {
      Json doc = header(c);
      doc["report"] = report_to_json(ex.report);
      write_text(c.out, doc.dump(2) + "\n");
    }
    return int(ex.report.pass ? kExitOk : kExitCheckFailed);
  });
}

int run_norm(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded("norm", err, [&] {
    RunConfig c = cfg;
    c.command = "norm";
    const double r = parse_exponent(c.r);
    const double s = parse_exponent(c.s);
    if (c.budget < 1) throw ArgumentError("--budget must be >= 1");

    std::optional<NormOperand> op;
    if (c.kind == "L_a" || c.kind == "lyapunov") {
      op = NormOperand::lyapunov(load_element_operand(c.operand, c.alg));
    } else if (c.kind == "P_a" || c.kind == "quadratic") {
      op = NormOperand::quadratic(load_element_operand(c.operand, c.alg));
    } else if (c.kind == "D_A" || c.kind == "schur") {
      if (c.operand.empty()) throw ArgumentError("--operand is required");
      const SchurMatrix a = load_schur_matrix(c.operand);
      op = NormOperand::schur(a, frame_for(a, c.alg));
    } else {
      throw ArgumentError("unknown operator kind '" + c.kind + "' (expected L_a, P_a or D_A)");
    }

    Rng rng(c.seed);
    const double closed = norm_closed_form(*op, r, s);
    const NormEstimate est = norm_empirical(*op, r, s, c.budget, rng);
    const double scale = std::max(1.0, closed);
    const bool bounded = est.value <= closed + 1e-9 * scale;
    const bool attained = std::abs(est.witness_ratio - closed) <= 1e-12 + 1e-6 * scale;
    const bool certified = op->closed_form_certified();

    out << "operator     " << to_string(op->kind()) << '\n';
    out << "r, s         " << fmt(r) << ", " << fmt(s) << '\n';
    out << "closed form  " << fmt(closed) << '\n';
    out << "empirical    " << fmt(est.value) << "  (" << est.evaluations << " evaluations)\n";
    out << "witness      " << fmt(est.witness_ratio) << '\n';
    out << "gap          " << fmt(closed - est.value) << '\n';
    if (!certified) out << "note         closed form not certified for this operand (A is not PSD)\n";

    if (!c.out.empty()) {
      Json doc = header(c);
      doc["operator"] = to_string(op->kind());
      doc["closed_form"] = number_to_json(closed);
      doc["empirical"] = number_to_json(est.value);
      doc["witness_ratio"] = number_to_json(est.witness_ratio);
      doc["gap"] = number_to_json(closed - est.value);
      doc["certified"] = certified;
      doc["witness"] = element_to_json(extremal_witness(*op, r, s));
      doc["best_input"] = element_to_json(est.witness);
      write_text(c.out, doc.dump(2) + "\n");
    }
    if (certified && !(bounded && attained)) return int(kExitCheckFailed);
    return int(kExitOk);
  });
}

int run_prospect(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded("prospect", err, [&] {
    RunConfig c = cfg;
    c.command = "prospect";
    const Tolerance tol = tolerance(c);

    if (!c.replay.empty()) {
      std::istringstream in(read_file(c.replay));
      std::string line;
      std::size_t total = 0, confirmed = 0;
      while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        SearchRecord rec = [&] {
          try {
            return record_from_json(Json::parse(line));
          } catch (const nlohmann::json::exception& e) {
            throw ArgumentError("archive line " + std::to_string(total + 1) + ": " + e.what());
          }
        }();
        const SearchRecord again = replay(rec, tol);
        ++total;
        const bool ok = again.violated == rec.violated;
        confirmed += ok;
        if (!ok) out << "record " << total << " not confirmed: margin " << fmt(again.margin) << '\n';
      }
      out << "replayed " << total << " records, " << confirmed << " confirmed\n";
      return int(confirmed == total ? kExitOk : kExitCheckFailed);
    }

    FamilySpec spec;
    spec.family = parse_family(c.family);
    spec.n = c.n;
    spec.zero_diagonal = c.zero_diag;
    if (spec.family == Family::UserFile) {
      if (c.operand.empty()) throw ArgumentError("family file needs --operand <matrix>");
      spec.user_matrix = load_schur_matrix(c.operand);
      spec.n = spec.user_matrix->n();
    }
    if (spec.n < 1) throw ArgumentError("--n must be >= 1");
    if (c.format != "json" && c.format != "csv") throw ArgumentError("--format must be json or csv");
    DescriptorPtr d = c.alg.empty() ? nullptr : share(parse_descriptor(c.alg));
    if (d && d->rank() != spec.n) throw ArgumentError("--alg rank does not match --n");

    ProspectResult res = sweep(spec, c.budget, c.samples, c.seed, Variant::Absolute, d, tol);
    if (c.refine_steps > 0)
      for (auto& rec : res.records) rec = refine(rec, c.refine_steps, tol);

    if (!c.out.empty()) {
      std::string archive;
      for (const auto& rec : res.records) archive += record_to_json(rec).dump() + "\n";
      write_text(c.out, archive);
      std::ostringstream csv;
      write_summary_csv(csv, {res.summary});
      write_text(c.out + ".csv", csv.str());
    }
    if (c.format == "csv") {
      write_summary_csv(out, {res.summary});
    } else {
      Json doc = header(c);
      const auto& s = res.summary;
      doc["summary"] = {{"family", to_string(s.family)},
                        {"n", s.n},
                        {"candidates", s.candidates},
                        {"samples", s.samples},
                        {"violations", s.violations},
                        {"violated_candidates", s.violated_candidates},
                        {"min_margin", number_to_json(s.min_margin)}};
      out << doc.dump(2) << '\n';
    }
    return int(kExitOk);
  });
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Euclidean Jordan algebra verification and search tool", kToolName};
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub, bool with_samples) {
    sub->add_option("--alg", cfg.alg, "Algebra: sym:n, spin:n or sum:<alg>+<alg>+...");
    if (with_samples) sub->add_option("--samples", cfg.samples, "Samples per check")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "Base seed; per-sample seeds are derived from it");
    sub->add_option("--atol", cfg.atol, "Absolute slack tolerance")->capture_default_str();
    sub->add_option("--rtol", cfg.rtol, "Relative slack tolerance")->capture_default_str();
    sub->add_option("--out", cfg.out, "Output path for the report or archive");
    sub->add_option("--threads", cfg.threads, "Worker threads (0 = all cores); results do not depend on it");
  };

  auto* verify = app.add_subcommand("verify", "Run every inequality check over random samples");
  common(verify, true);

  auto* prospect = app.add_subcommand("prospect", "Search Schur multiplier families for violations");
  common(prospect, true);
  prospect->add_option("--family", cfg.family,
                       "psd | lyapunov | quadratic | random_sym | rank_one | file")
      ->capture_default_str();
  prospect->add_option("--n", cfg.n, "Matrix order")->capture_default_str();
  prospect->add_flag("--zero-diag", cfg.zero_diag, "random_sym: force a zero diagonal");
  prospect->add_option("--budget", cfg.budget, "Candidate matrices to draw")->capture_default_str();
  prospect->add_option("--refine", cfg.refine_steps, "Refinement steps per archived violation");
  prospect->add_option("--format", cfg.format, "Summary format on stdout: json | csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  prospect->add_option("--replay", cfg.replay, "Re-verify every record of a JSON-lines archive");
  prospect->add_option("--operand", cfg.operand, "family file: matrix as dense CSV or JSON");

  auto* norm = app.add_subcommand("norm", "Closed-form and empirical operator norms");
  common(norm, false);
  norm->add_option("--kind", cfg.kind, "L_a | P_a | D_A")->capture_default_str();
  norm->add_option("--operand", cfg.operand,
                   "Element JSON file or a unit multiple like 2e (L_a, P_a); matrix CSV/JSON (D_A)");
  norm->add_option("-r,--domain-norm", cfg.r, "Domain spectral p-norm (>= 1 or inf)")->capture_default_str();
  norm->add_option("-s,--codomain-norm", cfg.s, "Codomain spectral p-norm (>= 1 or inf)")->capture_default_str();
  norm->add_option("--budget", cfg.budget, "Ratio evaluations for the empirical estimate")->capture_default_str();

  auto* repro = app.add_subcommand("repro-example", "Reproduce the 2x2 Jordan-product counterexample");
  repro->add_option("--out", cfg.out, "Optional JSON report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolName << ' ' << kToolVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << kToolName << ": " << e.what() << '\n';
    return kExitUsage;
  }

  if (verify->parsed()) return run_verify(cfg, out, err);
  if (prospect->parsed()) return run_prospect(cfg, out, err);
  if (norm->parsed()) return run_norm(cfg, out, err);
  return run_repro_example(cfg, out, err);
}

}  // namespace eja
