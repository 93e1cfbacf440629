// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//
// Command-line front end. Exit codes: 0 success, 1 usage or input error,
// 2 a checked inequality or reproduction failed.
//

#pragma once

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spectral_submod/cur.hpp"
#include "spectral_submod/io.hpp"
#include "spectral_submod/mmatrix.hpp"
#include "spectral_submod/random.hpp"
#include "spectral_submod/set_functions.hpp"
#include "spectral_submod/subspace.hpp"
#include "spectral_submod/verification.hpp"

namespace spectral_submod {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailure = 2;

namespace cli {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double lap_ms() {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - start_).count();
    start_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

struct Options {
  std::string matrix;
  std::string function = "power:1";
  std::optional<double> tol;
  std::uint64_t seed = 1;
  std::uint64_t samples = 0;
  std::string report;
  std::size_t k = 1;
  unsigned threads = 1;
  bool full_scan = false;
  bool compatible = false;
  std::string set;
  std::string emit_csv;
  std::string out_dir = ".";
};

inline Json witness_json(const Witness& w, const char* kind) {
  return Json{{"kind", kind}, {"I", to_json(w.i)}, {"J", to_json(w.j)}, {"delta", w.delta}};
}

inline Json modularity_json(const ModularityReport& r) {
  Json out{{"verdict", to_string(r.verdict)},
           {"min_delta", r.min_delta},
           {"max_delta", r.max_delta},
           {"tolerance", r.tolerance},
           {"pairs_evaluated", r.pairs_evaluated},
           {"pairs_skipped", r.pairs_skipped},
           {"submodular_violations", r.submodular_violation_count},
           {"supermodular_violations", r.supermodular_violation_count}};
  return out;
}

inline void append_witnesses(Json& list, const ModularityReport& r) {
  for (const Witness& w : r.submodular_violations) list.push_back(witness_json(w, "submodular-violation"));
  for (const Witness& w : r.supermodular_violations)
    list.push_back(witness_json(w, "supermodular-violation"));
}

inline Json block_witness_json(const BlockCounterexample& w) {
  return Json{{"p", w.p},
              {"I", to_json(w.i)},
              {"J", to_json(w.j)},
              {"delta", w.delta},
              {"tolerance", w.tolerance},
              {"s", w.s},
              {"attempt", w.attempt},
              {"matrix", matrix_to_json(w.a.matrix(), !is_real(w.a.matrix()))}};
}

inline void finish_inputs(Report& rep, const Json& matrix) {
  Json canonical = rep.inputs;
  canonical["command"] = rep.command;
  if (!matrix.is_null()) canonical["matrix"] = matrix;
  rep.inputs_digest = digest(canonical);
}

inline LoadedMatrix require_matrix(const Options& o, ExpectedClass cls) {
  if (o.matrix.empty()) throw ParseError("--matrix is required");
  return parse_matrix(o.matrix, cls);
}

inline int cmd_classify(const Options& o, Report& rep) {
  Stopwatch sw;
  const LoadedMatrix lm = require_matrix(o, ExpectedClass::kHermitian);
  const HermitianMatrix a = lm.hermitian();
  const SpectralFunction f = parse_spectral_function(o.function);
  rep.inputs = {{"function", f.name()}, {"threads", o.threads}};
  if (o.tol) rep.inputs["tol"] = *o.tol;
  finish_inputs(rep, matrix_to_json(a.matrix(), !is_real(a.matrix())));
  rep.timings_ms["parse"] = sw.lap_ms();
  const ModularityReport r = classify_modularity(a, f, o.tol, o.threads);
  rep.timings_ms["classify"] = sw.lap_ms();
  rep.results = modularity_json(r);
  append_witnesses(rep.witnesses, r);
  const auto ev = eigenvalues(a);
  const bool psd = is_nonnegative_definite(a);
  const bool pd = psd && !ev.empty() && ev.back() > rank_tolerance(ev);
  const bool needs_pd = f.kind() == SpectralFunction::Kind::kLog ||
                        (f.kind() == SpectralFunction::Kind::kPower && f.exponent() < 0);
  const auto expected = guaranteed_verdict(f, MatrixClass::kNonnegativeDefinite);
  if (expected && psd && (!needs_pd || pd)) {
    const bool ok = verdict_consistent(*expected, r.verdict);
    rep.results["expected"] = to_string(*expected);
    rep.results["consistent"] = ok;
    if (!ok) return kExitFailure;
  }
  return kExitOk;
}

inline int cmd_monotone(const Options& o, Report& rep) {
  Stopwatch sw;
  const HermitianMatrix a = require_matrix(o, ExpectedClass::kHermitian).hermitian();
  const SpectralFunction f = parse_spectral_function(o.function);
  rep.inputs = {{"function", f.name()}};
  if (o.tol) rep.inputs["tol"] = *o.tol;
  finish_inputs(rep, matrix_to_json(a.matrix(), !is_real(a.matrix())));
  const MonotonicityReport r = is_nondecreasing(a, f, o.tol);
  rep.timings_ms["check"] = sw.lap_ms();
  rep.results = {{"nondecreasing", r.nondecreasing}, {"tolerance", r.tolerance}};
  if (r.from) {
    rep.witnesses.push_back(Json{{"kind", "decrease"},
                                 {"from", to_json(*r.from)},
                                 {"to", to_json(*r.to)},
                                 {"w_from", to_json(r.w_from)},
                                 {"w_to", to_json(r.w_to)}});
  }
  return kExitOk;
}

inline int cmd_cur(const Options& o, Report& rep) {
  Stopwatch sw;
  const HermitianMatrix a = require_matrix(o, ExpectedClass::kHermitian).hermitian();
  rep.inputs = {{"k", o.k}};
  finish_inputs(rep, matrix_to_json(a.matrix(), !is_real(a.matrix())));
  if (o.k < 1 || o.k > a.dim()) throw ParseError("-k must lie in 1..dim");
  const CurSelection sel = greedy_select(a, o.k);
  rep.timings_ms["select"] = sw.lap_ms();
  Json pivots = Json::array();
  for (const Pivot& p : sel.pivots) pivots.push_back(Json{{"index", p.index + 1}, {"value", p.value}});
  rep.results = {{"indices", to_json(sel.indices)},
                 {"t", sel.det_product},
                 {"pivots", pivots},
                 {"degenerate", sel.degenerate}};
  if (sel.degenerate) {
    rep.results["note"] = "zero pivot met; indices defaulted to the first k";
    return kExitOk;
  }
  const CurResult cr = cur_build(a, sel.indices);
  rep.timings_ms["cur"] = sw.lap_ms();
  rep.results["achieved_error"] = cr.achieved_error;
  rep.results["det_core"] = cr.det_core;
  rep.results["sigma_k1"] = cr.sigma_k1;
  rep.results["bound"] = to_json(cr.bound);
  rep.results["bound_note"] = cr.bound_note;
  if (cr.mu_k) rep.results["mu_k"] = *cr.mu_k;
  const bool holds = !cr.bound.is_finite() || cr.achieved_error <= cr.bound.value() + 1e-8;
  rep.results["bound_holds"] = holds;
  return holds ? kExitOk : kExitFailure;
}

inline int cmd_mu_k(const Options& o, Report& rep) {
  Stopwatch sw;
  const ComplexMatrix a = require_matrix(o, ExpectedClass::kGeneral).general();
  rep.inputs = {{"k", o.k}, {"full_scan", o.full_scan}};
  finish_inputs(rep, matrix_to_json(a, !is_real(a)));
  if (o.k < 1 || o.k > a.rows()) throw ParseError("-k must lie in 1..dim");
  const MaxVolume mv = mu_k_exhaustive(a, o.k, !o.full_scan);
  rep.timings_ms["scan"] = sw.lap_ms();
  rep.results = {{"mu_k", mv.value}, {"rows", to_json(mv.rows)}, {"cols", to_json(mv.cols)},
                 {"principal", mv.rows == mv.cols}};
  return kExitOk;
}

inline int cmd_mmatrix_trace(const Options& o, Report& rep) {
  Stopwatch sw;
  const RealMatrix a = require_matrix(o, ExpectedClass::kMMatrix).real();
  const SpectralFunction f = parse_spectral_function(o.function);
  rep.inputs = {{"function", f.name()}, {"set", o.set}};
  finish_inputs(rep, matrix_to_json(to_complex(a), false));
  const IndexSet set = o.set.empty() ? IndexSet::full(a.rows()) : parse_index_list(a.rows(), o.set);
  if (set.is_empty()) throw ParseError("--set must be nonempty");
  const MMatrixSplit split = validate_and_split(principal_block(a, set));
  const SeriesTrace st = series_trace_detailed(split, f);
  rep.timings_ms["series"] = sw.lap_ms();
  rep.results = {{"set", to_json(set)},
                 {"s", split.s},
                 {"rho", split.rho},
                 {"singular", split.singular},
                 {"trace", to_json(st.value)},
                 {"terms", st.terms},
                 {"via_limit", st.via_limit}};
  bool symmetric = true;
  const RealMatrix sub = principal_block(a, set);
  for (std::size_t i = 0; i < sub.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j) symmetric = symmetric && sub(i, j) == sub(j, i);
  if (symmetric) rep.results["eigen_trace"] = to_json(trace_function(HermitianMatrix(sub), f));
  if (a.rows() <= 12) {
    const ModularityReport r = classify_set_function(mmatrix_set_function(a, f));
    rep.timings_ms["classify"] = sw.lap_ms();
    rep.results["classification"] = modularity_json(r);
    append_witnesses(rep.witnesses, r);
    if (const auto expected = guaranteed_verdict(f, MatrixClass::kMMatrix)) {
      const bool ok = verdict_consistent(*expected, r.verdict);
      rep.results["expected"] = to_string(*expected);
      rep.results["consistent"] = ok;
      if (!ok) return kExitFailure;
    }
  }
  return kExitOk;
}

inline int cmd_subspace_check(const Options& o, Report& rep) {
  Stopwatch sw;
  const HermitianMatrix a = require_matrix(o, ExpectedClass::kHermitian).hermitian();
  const SpectralFunction f = parse_spectral_function(o.function);
  const std::uint64_t pairs = o.samples ? o.samples : 50;
  rep.inputs = {{"function", f.name()},
                {"seed", o.seed},
                {"samples", pairs},
                {"pairs", o.compatible ? "compatible" : "generic"}};
  finish_inputs(rep, matrix_to_json(a.matrix(), !is_real(a.matrix())));
  const std::size_t m = a.dim();
  double min_d = 0.0;
  double max_d = 0.0;
  std::uint64_t sub_viol = 0;
  std::uint64_t super_viol = 0;
  double max_tol = 0.0;
  for (std::uint64_t k = 0; k < pairs; ++k) {
    Rng rng = make_rng(o.seed, 0x5B5, k);
    SubspacePair uv = o.compatible ? random_compatible_pair(m, rng)
                                   : SubspacePair{random_subspace(m, rng), random_subspace(m, rng)};
    const Subspace& u = uv.u;
    const Subspace& v = uv.v;
    const Subspace sum = subspace_sum(u, v);
    const Subspace meet = subspace_intersection(u, v);
    const ExtendedReal wu = subspace_trace(a, f, u);
    const ExtendedReal wv = subspace_trace(a, f, v);
    const ExtendedReal ws = subspace_trace(a, f, sum);
    const ExtendedReal wm = subspace_trace(a, f, meet);
    if (!wu.is_finite() || !wv.is_finite() || !ws.is_finite() || !wm.is_finite()) continue;
    const double d = (wu.value() - ws.value()) + (wv.value() - wm.value());
    double scale = 1.0;
    for (double w : {wu.value(), wv.value(), ws.value(), wm.value()}) scale = std::max(scale, std::abs(w));
    const double tol = o.tol ? *o.tol : 1e-9 * scale;
    max_tol = std::max(max_tol, tol);
    min_d = std::min(min_d, d);
    max_d = std::max(max_d, d);
    if (d < -tol) ++sub_viol;
    if (d > tol) ++super_viol;
    if (d < -tol || d > tol)
      if (rep.witnesses.size() < 16)
        rep.witnesses.push_back(Json{{"kind", d < 0 ? "submodular-violation" : "supermodular-violation"},
                                     {"pair", k},
                                     {"dim_U", u.dim()},
                                     {"dim_V", v.dim()},
                                     {"delta", d}});
  }
  rep.timings_ms["subspaces"] = sw.lap_ms();
  // Coordinate subspaces must reproduce the index-set defect.
  double coordinate_gap = 0.0;
  if (m <= 6) {
    const std::uint64_t n = subset_count(m);
    for (std::uint64_t i = 0; i < n; ++i)
      for (std::uint64_t j = i; j < n; ++j) {
        const IndexSet si(m, i);
        const IndexSet sj(m, j);
        const ExtendedReal d1 = delta(a, f, si, sj);
        const ExtendedReal d2 = subspace_delta(a, f, Subspace::coordinate(si), Subspace::coordinate(sj));
        if (d1.is_finite() && d2.is_finite())
          coordinate_gap = std::max(coordinate_gap, std::abs(d1.value() - d2.value()));
      }
    rep.timings_ms["coordinate"] = sw.lap_ms();
    rep.results["coordinate_max_gap"] = coordinate_gap;
  }
  const bool sub = sub_viol == 0;
  const bool super = super_viol == 0;
  const Verdict verdict = sub && super ? Verdict::kModular
                          : sub        ? Verdict::kSubmodular
                          : super      ? Verdict::kSupermodular
                                       : Verdict::kNeither;
  rep.results.update(Json{{"verdict", to_string(verdict)},
                          {"min_delta", min_d},
                          {"max_delta", max_d},
                          {"max_tolerance", max_tol},
                          {"submodular_violations", sub_viol},
                          {"supermodular_violations", super_viol}});
  bool ok = coordinate_gap <= 1e-9 * std::max(1.0, entrywise_max_norm(a));
  if (const auto expected = guaranteed_verdict(f, MatrixClass::kNonnegativeDefinite);
      expected && is_nonnegative_definite(a)) {
    const bool consistent = verdict_consistent(*expected, verdict);
    rep.results["expected"] = to_string(*expected);
    rep.results["consistent"] = consistent;
    ok = ok && consistent;
  }
  return ok ? kExitOk : kExitFailure;
}

inline int cmd_table1(const Options& o, Report& rep) {
  Stopwatch sw;
  Table1Options opt;
  opt.samples = o.samples ? o.samples : 200;
  opt.seed = o.seed;
  opt.threads = o.threads;
  rep.inputs = {{"samples", opt.samples}, {"seed", opt.seed}, {"min_m", opt.min_m}, {"max_m", opt.max_m}};
  finish_inputs(rep, Json());
  std::vector<ScanRecord> records;
  const auto rows = table1_scan(opt, o.emit_csv.empty() ? nullptr : &records);
  rep.timings_ms["scan"] = sw.lap_ms();
  Json list = Json::array();
  for (const RegimeRow& r : rows) {
    Json row{{"p_range", r.p_range},
             {"m_constraint", r.m_constraint},
             {"claim", to_string(r.claim)},
             {"status", to_string(r.status)},
             {"source", r.source},
             {"exponents", r.exponents}};
    if (!r.note.empty()) row["note"] = r.note;
    if (r.statistics) {
      const SampleStatistics& s = *r.statistics;
      row["evidence"] = Json{{"matrices", s.matrices},
                             {"classifications", s.classifications},
                             {"pairs_evaluated", s.pairs_evaluated},
                             {"violations", s.violations},
                             {"worst_delta", s.worst_delta},
                             {"max_tolerance", s.max_tolerance}};
    }
    if (r.witness) {
      Json w = block_witness_json(*r.witness);
      w["row"] = r.p_range + " / " + r.m_constraint;
      rep.witnesses.push_back(w);
      row["evidence"] = Json{{"witness", rep.witnesses.size() - 1}};
    }
    list.push_back(row);
  }
  rep.results = {{"rows", list}, {"passed", table1_passed(rows)}};
  if (!o.emit_csv.empty()) {
    std::string csv = "row,m,sample,p,min_delta,max_delta,tolerance\n";
    for (const ScanRecord& r : records) {
      csv += "\"" + r.row + "\"," + std::to_string(r.m) + "," + std::to_string(r.sample) + "," +
             detail::format_double(r.p) + "," + detail::format_double(r.min_delta) + "," +
             detail::format_double(r.max_delta) + "," + detail::format_double(r.tolerance) + "\n";
    }
    write_text_file(o.emit_csv, csv);
    rep.results["csv"] = o.emit_csv;
  }
  return table1_passed(rows) ? kExitOk : kExitFailure;
}

inline int cmd_reproduce(const Options&, Report& rep) {
  Stopwatch sw;
  finish_inputs(rep, Json());
  const auto items = run_paper_examples();
  rep.timings_ms["examples"] = sw.lap_ms();
  Json list = Json::array();
  bool all = true;
  for (const auto& it : items) {
    list.push_back(Json{{"name", it.name},
                        {"computed", it.computed},
                        {"expected", it.expected},
                        {"abs_error", it.abs_error},
                        {"pass", it.pass}});
    all = all && it.pass;
  }
  rep.results = {{"items", list}, {"tolerance", kReproductionTolerance}, {"passed", all}};
  return all ? kExitOk : kExitFailure;
}

inline int cmd_examples_dump(const Options& o, Report& rep) {
  rep.inputs = {{"out_dir", o.out_dir}};
  finish_inputs(rep, Json());
  std::filesystem::create_directories(o.out_dir);
  const std::vector<std::pair<std::string, HermitianMatrix>> mats{
      {"inverse_power_example", reference::inverse_power_example()},
      {"operator_convex_example", reference::operator_convex_example()},
      {"corner_exchange", reference::corner_exchange()},
      {"jacobi_example", reference::jacobi_example()}};
  Json files = Json::array();
  for (const auto& [name, m] : mats) {
    const auto base = std::filesystem::path(o.out_dir) / name;
    const std::string json_path = base.string() + ".json";
    const std::string csv_path = base.string() + ".csv";
    write_text_file(json_path, write_matrix_json(m.matrix()));
    RealMatrix r(m.dim(), m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
      for (std::size_t j = 0; j < m.dim(); ++j) r(i, j) = m(i, j).real();
    write_text_file(csv_path, write_matrix_csv(r));
    files.push_back(json_path);
    files.push_back(csv_path);
  }
  rep.results = {{"files", files}};
  return kExitOk;
}

}  // namespace cli

// Parses argv, runs one subcommand, prints the JSON report to `out` (and to
// --report when given). Errors go to `err`.
inline int run_command(const std::vector<std::string>& args, std::ostream& out = std::cout,
                       std::ostream& err = std::cerr) {
  CLI::App app{"Spectral set function toolkit", "spectral_submod"};
  app.require_subcommand(1);
  cli::Options o;

  auto matrix_opt = [&](CLI::App* sub) {
    sub->add_option("--matrix", o.matrix, "Matrix file (.json or .csv)");
  };
  auto function_opt = [&](CLI::App* sub) {
    sub->add_option("--function", o.function, "power:<p> | xlogx | log");
  };
  auto common = [&](CLI::App* sub) {
    sub->add_option("--report", o.report, "Also write the JSON report to this path");
    sub->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  };

  std::vector<std::pair<CLI::App*, int (*)(const cli::Options&, Report&)>> commands;
  auto add = [&](const char* name, const char* help, int (*fn)(const cli::Options&, Report&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    common(sub);
    commands.emplace_back(sub, fn);
    return sub;
  };

  CLI::App* c = add("classify", "Classify I -> tr f(A[I]) as sub/supermodular", cli::cmd_classify);
  matrix_opt(c);
  function_opt(c);
  c->add_option("--tol", o.tol, "Absolute tolerance (default 1e-9 max(1, max|w|))");

  c = add("monotone", "Check that I -> tr f(A[I]) is nondecreasing", cli::cmd_monotone);
  matrix_opt(c);
  function_opt(c);
  c->add_option("--tol", o.tol, "Absolute tolerance");

  c = add("cur", "Greedy CUR selection with error bound", cli::cmd_cur);
  matrix_opt(c);
  c->add_option("-k", o.k, "Number of rows/columns")->required();

  c = add("mu-k", "Maximal k x k volume by exhaustive scan", cli::cmd_mu_k);
  matrix_opt(c);
  c->add_option("-k", o.k, "Minor size")->required();
  c->add_flag("--full-scan", o.full_scan, "Scan all k x k minors, not only principal ones");

  c = add("mmatrix-trace", "Series trace of an M-matrix function", cli::cmd_mmatrix_trace);
  matrix_opt(c);
  function_opt(c);
  c->add_option("--set", o.set, "One-based index list, e.g. 1,3 (default: all)");

  c = add("subspace-check", "Sub/supermodularity over random subspace pairs", cli::cmd_subspace_check);
  matrix_opt(c);
  function_opt(c);
  c->add_option("--tol", o.tol, "Absolute tolerance");
  c->add_option("--seed", o.seed, "Random seed");
  c->add_option("--samples", o.samples, "Number of subspace pairs (default 50)");
  c->add_flag("--compatible", o.compatible, "Sample pairs with commuting projectors");

  c = add("table1", "Regime table scan over random matrices and witnesses", cli::cmd_table1);
  c->add_option("--seed", o.seed, "Random seed");
  c->add_option("--samples", o.samples, "Random matrices per size (default 200)");
  c->add_option("--emit-csv", o.emit_csv, "Write per-sample scan data as CSV");

  add("reproduce-paper", "Recompute the fixed counterexample values", cli::cmd_reproduce);

  c = add("examples-dump", "Write the fixed reference matrices as JSON and CSV",
          cli::cmd_examples_dump);
  c->add_option("--out-dir", o.out_dir, "Output directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  for (auto& [sub, fn] : commands) {
    if (!sub->parsed()) continue;
    Report rep;
    rep.command = sub->get_name();
    int code = kExitUsage;
    try {
      code = fn(o, rep);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }
    const std::string text = serialize(rep);
    out << text;
    if (!o.report.empty()) {
      try {
        write_text_file(o.report, text);
      } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
      }
    }
    return code;
  }
  return kExitUsage;
}

inline int run_command(int argc, const char* const* argv, std::ostream& out = std::cout,
                       std::ostream& err = std::cerr) {
  return run_command(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace spectral_submod
