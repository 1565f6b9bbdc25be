// laakso: batch front end over the library. Every command writes one JSON
// document (or CSV where noted) to stdout or --output. Failures print
// {"error": {"kind", "message"}} and exit with 2 (bad input) or 3 (solver).

#include <CLI11.hpp>

#include <Eigen/Core>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "laakso/json_io.hpp"
#include "laakso/laakso.hpp"

namespace {

using namespace laakso;

enum class Format { json, csv };

struct Common {
  std::string j = "2";
  bool periodic = false;
  std::string format = "json";
  std::string output;
};

struct Plates {
  int N = 0;
  int Z = 0;
  std::string X0;
  double hbar = 1.0;

  bool given() const { return N != 0 || !X0.empty(); }
  PlateConfig config() const {
    if (X0.empty()) throw ValidationError("plate configuration needs --X0");
    return PlateConfig(N, Z, Rational::parse(X0), hbar);
  }
};

struct Config {
  Common common;
  Plates plates;
  int level = 0;
  double lambda_max = 300.0;
  std::string kind = "free";
  bool per_family = false;
  std::string potential = "free";
  double cutoff = 1e15;
  int mesh = 0;
  int count = 10;
  double tolerance = SolveOptions{}.tolerance;
  int max_iterations = SolveOptions{}.max_iterations;
  double cluster_tol = 1e-2;
  int trace = -1;
  std::string trace_output;
  double s_re = 2.0;
  double s_im = 0.0;
  int poles = 1;
  bool published_lattice = false;
  double step = 1e-6;
  bool brute = false;
  std::string region;
};

std::vector<int> parse_j_list(const std::string& text) {
  std::vector<int> out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) throw ValidationError("empty entry in j list '" + text + "'");
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(cur, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != cur.size()) throw ValidationError("j list entry '" + cur + "' is not an integer");
    out.push_back(v);
    cur.clear();
  };
  for (char c : text) {
    if (c == ',') {
      flush();
    } else if (c != ' ') {
      cur += c;
    }
  }
  flush();
  return out;
}

JSequence sequence(const Common& c) {
  const auto v = parse_j_list(c.j);
  return c.periodic ? JSequence::periodic(v) : JSequence::explicit_prefix(v);
}

// The zeta and describe formulas only exist for periodic sequences; the
// list given there is read as one period.
JSequence period_sequence(const Common& c) { return JSequence::periodic(parse_j_list(c.j)); }

Format format_of(const Common& c) {
  if (c.format == "json") return Format::json;
  if (c.format == "csv") return Format::csv;
  throw ValidationError("--format must be json or csv");
}

void emit(const Common& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(c.output, std::ios::binary | std::ios::trunc);
  if (!f) throw ValidationError("cannot open output file '" + c.output + "'");
  f << text;
  if (!f) throw ValidationError("failed writing output file '" + c.output + "'");
}

std::string csv_only_for(const std::string& cmd) { return "--format csv is not available for '" + cmd + "'"; }

json jseq_json(const JSequence& seq) { return {{"values", seq.values()}, {"periodic", seq.is_periodic()}}; }

// --- commands ----------------------------------------------------------------

std::string cmd_describe(const Config& cfg) {
  if (format_of(cfg.common) == Format::csv) throw ValidationError(csv_only_for("describe"));
  const JSequence seq = period_sequence(cfg.common);
  const int T = seq.period();
  const int n = cfg.level > 0 ? cfg.level : T;
  const auto ip = level_products(seq, n);
  json products = json::array();
  for (int i = 0; i <= n; ++i) products.push_back(ip[i]);
  json doc = {{"j", jseq_json(seq)},
              {"period", T},
              {"I_T", seq.level_product(T)},
              {"hausdorff_dimension", hausdorff_dimension(seq)},
              {"spectral_dimension", spectral_dimension(seq)},
              {"max_pole_real_part", max_pole_real_part(seq)},
              {"level", n},
              {"level_products", products},
              {"hausdorff_estimate", hausdorff_estimate(seq, n)},
              {"census", to_json(census_formula(seq, n).counts)}};
  return canonical_dump(doc);
}

std::string cmd_spectrum(const Config& cfg) {
  const Format fmt = format_of(cfg.common);
  SpectrumQuery q;
  q.lambda_max = cfg.lambda_max;
  q.policy = cfg.per_family ? MergePolicy::per_family : MergePolicy::merged;
  std::vector<SpectralLine> lines;
  json doc = {{"kind", cfg.kind}, {"lambda_max", cfg.lambda_max}, {"policy", cfg.per_family ? "per_family" : "merged"}};
  if (cfg.kind == "plates") {
    const PlateConfig pc = cfg.plates.config();
    lines = plates_spectrum(pc, q);
    doc["plates"] = {{"N", pc.N}, {"Z", pc.Z}, {"X0", pc.X0.str()}};
  } else {
    const JSequence seq = sequence(cfg.common);
    doc["j"] = jseq_json(seq);
    if (cfg.kind == "free") {
      lines = free_spectrum(seq, q);
    } else if (cfg.kind == "square-well" || cfg.kind == "square_well") {
      lines = square_well_spectrum(seq, q);
      // d_n = 0 puts a node column on the wall, where the d_n != 0 families drop out.
      std::set<int> levels;
      for (const auto& l : lines) {
        for (const auto& src : l.sources) {
          if (src.n >= 1) levels.insert(src.n);
        }
      }
      json geo = json::array();
      for (int n : levels) {
        const WellGeometry wg = well_geometry(seq, n);
        geo.push_back({{"level", n}, {"w", wg.w.str()}, {"d", wg.d.str()}, {"wall_on_column", wg.wall_on_column()}});
      }
      doc["well_geometry"] = geo;
    } else {
      throw ValidationError("--kind must be free, square-well or plates (got '" + cfg.kind + "')");
    }
  }
  if (cfg.level > 0) lines = restrict_to_level(lines, cfg.level);
  if (fmt == Format::csv) return lines_to_csv(lines);
  doc["lines"] = lines_to_json(lines);
  doc["total_multiplicity"] = total_multiplicity(lines);
  return canonical_dump(doc);
}

std::string cmd_solve(const Config& cfg) {
  const Format fmt = format_of(cfg.common);
  if (cfg.level < 0) throw ValidationError("--level must be >= 0");
  std::optional<PlateConfig> pc;
  JSequence seq = JSequence::periodic({2});
  if (cfg.plates.given()) {
    pc = cfg.plates.config();
    seq = JSequence::periodic({pc->N});
  } else {
    seq = sequence(cfg.common);
  }
  const QuantumGraph g = build_graph(seq, cfg.level, pc);
  Potential pot;
  pot.kind = parse_potential_kind(cfg.potential);
  if (pot.kind == PotentialKind::custom) throw ValidationError("custom potentials are only available through the library");
  pot.cutoff = cfg.cutoff;
  const int M = cfg.mesh > 0 ? cfg.mesh : default_mesh();
  const DiscretizedOperator op = discretize(g, M, pot);
  // --trace-output alone traces the ground state.
  const int trace_index = cfg.trace >= 0 ? cfg.trace : (cfg.trace_output.empty() ? -1 : 0);
  SolveOptions opt;
  opt.keep_vectors = trace_index >= 0;
  opt.tolerance = cfg.tolerance;
  opt.max_iterations = cfg.max_iterations;
  const EigenResult r = solve_lowest(op, cfg.count, opt);

  std::vector<TracePoint> trace;
  if (trace_index >= 0) trace = eigenfunction_trace(op, r, trace_index);
  if (!cfg.trace_output.empty()) {
    Common t;
    t.output = cfg.trace_output;
    emit(t, trace_to_csv(trace));
  }
  if (fmt == Format::csv) {
    std::string out = "index,eigenvalue,residual\n";
    for (int i = 0; i < r.eigenvalues.size(); ++i) {
      out += std::to_string(i) + "," + format_double(r.eigenvalues[i]) + "," + format_double(r.residuals[static_cast<std::size_t>(i)]) + "\n";
    }
    return out;
  }
  json doc = to_json(r);
  doc["residuals"] = r.residuals;
  doc["level"] = cfg.level;
  doc["mesh"] = M;
  doc["potential"] = {{"kind", to_string(pot.kind)}, {"cutoff", pot.cutoff}};
  if (pc) {
    doc["plates"] = {{"N", pc->N}, {"Z", pc->Z}, {"X0", pc->X0.str()}};
  } else {
    doc["j"] = jseq_json(seq);
  }
  doc["clusters"] = lines_to_json(cluster(r, cfg.cluster_tol));
  doc["cluster_tolerance"] = cfg.cluster_tol;
  if (trace_index >= 0) {
    json pts = json::array();
    for (const auto& t : trace) pts.push_back({{"x", t.x}, {"row", t.row_label}, {"value", t.value}});
    doc["trace"] = {{"index", trace_index}, {"points", pts}};
  }
  return canonical_dump(doc);
}

std::string cmd_zeta(const Config& cfg) {
  const Format fmt = format_of(cfg.common);
  const JSequence seq = period_sequence(cfg.common);
  const ZetaValue z = spectral_zeta_periodic(seq, cplx(cfg.s_re, cfg.s_im));
  const auto poles = zeta_poles(seq, cfg.poles, cfg.published_lattice ? PoleLattice::published : PoleLattice::full);
  if (fmt == Format::csv) {
    std::string out = "family,m,re,im\n";
    for (const auto& p : poles) {
      out += std::to_string(p.family) + "," + std::to_string(p.m) + "," + format_double(p.s.real()) + "," + format_double(p.s.imag()) + "\n";
    }
    return out;
  }
  json pj = json::array();
  for (const auto& p : poles) pj.push_back(to_json(p));
  json doc = to_json(z);
  doc["j"] = jseq_json(seq);
  doc["spectral_dimension"] = spectral_dimension(seq);
  doc["poles"] = pj;
  doc["pole_lattice"] = cfg.published_lattice ? "published" : "full";
  return canonical_dump(doc);
}

std::string cmd_casimir(const Config& cfg) {
  if (format_of(cfg.common) == Format::csv) throw ValidationError(csv_only_for("casimir"));
  const CasimirReport r = casimir_report(cfg.plates.config(), cfg.step);
  json doc = to_json(r);
  doc["fd_step"] = cfg.step;
  return canonical_dump(doc);
}

std::string cmd_census(const Config& cfg) {
  if (format_of(cfg.common) == Format::csv) throw ValidationError(csv_only_for("census"));
  if (cfg.level < 1) throw ValidationError("census needs --level >= 1");
  const JSequence seq = sequence(cfg.common);
  json doc = {{"j", jseq_json(seq)}, {"level", cfg.level}, {"formula", to_json(census_formula(seq, cfg.level).counts)}};
  if (cfg.brute || !cfg.region.empty()) {
    const QuantumGraph g = build_graph(seq, cfg.level);
    std::optional<ColumnRegion> region;
    if (cfg.region == "square-well") {
      region = square_well_region();
    } else if (!cfg.region.empty()) {
      throw ValidationError("--region must be square-well");
    }
    const ShapeCensus c = shape_census(g, region);
    doc["decomposition"] = to_json(c.counts);
    doc["agree"] = c.counts == census_formula(seq, cfg.level).counts;
    if (c.regions) {
      doc["regions"] = {{"interior", to_json(c.regions->interior)},
                        {"exterior", to_json(c.regions->exterior)},
                        {"straddling", to_json(c.regions->straddling)}};
      const auto in = interior_shape_counts(seq, cfg.level);
      doc["interior_formula"] = {{"full_crosses", in.full_crosses},
                                 {"half_crosses", in.half_crosses},
                                 {"loops", in.loops},
                                 {"m", in.m},
                                 {"cross_case", std::string(1, in.cross_case)},
                                 {"loop_case", std::string(1, in.loop_case)}};
    }
  }
  return canonical_dump(doc);
}

void apply_thread_cap() {
  if (const char* env = std::getenv("LAAKSO_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) Eigen::setNbThreads(n);
    } catch (const std::exception&) {
      throw ValidationError(std::string("LAAKSO_THREADS must be a positive integer (got '") + env + "')");
    }
  }
}

int fail(const std::string& kind, const std::string& message, int code) {
  std::cout << canonical_dump(error_record(kind, message));
  return code;
}

void add_common(CLI::App* sub, Config& cfg, bool with_periodic = true) {
  sub->add_option("--j", cfg.common.j, "comma-separated j values")->capture_default_str();
  if (with_periodic) sub->add_flag("--periodic", cfg.common.periodic, "repeat the j list periodically (default: explicit prefix)");
  sub->add_option("--format", cfg.common.format, "json or csv")->capture_default_str();
  sub->add_option("-o,--output", cfg.common.output, "write to this file instead of stdout");
}

void add_plates(CLI::App* sub, Config& cfg) {
  sub->add_option("--N", cfg.plates.N, "constant subdivision j_n = N");
  sub->add_option("--Z", cfg.plates.Z, "F_1 nodes strictly between the plates")->capture_default_str();
  sub->add_option("--X0", cfg.plates.X0, "plate distance from x = 1/2, as a rational such as 3/20");
  sub->add_option("--hbar", cfg.plates.hbar, "reduced Planck constant")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  CLI::App app{"Laakso-space quantum graphs: spectra, eigensolves, spectral zeta and Casimir forces"};
  app.require_subcommand(1);

  auto* describe = app.add_subcommand("describe", "dimensions and level data of a periodic j-sequence");
  add_common(describe, cfg);
  describe->add_option("--level", cfg.level, "level for products and census (default: one period)");

  auto* spectrum = app.add_subcommand("spectrum", "analytic spectral lines up to lambda_max");
  add_common(spectrum, cfg);
  add_plates(spectrum, cfg);
  spectrum->add_option("--kind", cfg.kind, "free, square-well or plates")->capture_default_str();
  spectrum->add_option("--lambda-max", cfg.lambda_max, "largest eigenvalue to list")->capture_default_str();
  spectrum->add_option("--level", cfg.level, "keep only families resolvable on F_level (0: all)")->capture_default_str();
  spectrum->add_flag("--per-family", cfg.per_family, "one line per contributing family instead of merged lines");

  auto* solve = app.add_subcommand("solve", "lowest eigenvalues of the discretised Schroedinger operator on F_level");
  add_common(solve, cfg);
  add_plates(solve, cfg);
  solve->add_option("--level", cfg.level, "graph level n")->required();
  solve->add_option("--potential", cfg.potential, "free, square-well, coulomb or parabolic")->capture_default_str();
  solve->add_option("--cutoff", cfg.cutoff, "potential magnitude at which nodes are pinned")->capture_default_str();
  solve->add_option("--mesh", cfg.mesh, "interior nodes per edge (default 7)");
  solve->add_option("--count", cfg.count, "number of eigenvalues")->capture_default_str();
  solve->add_option("--tolerance", cfg.tolerance, "residual bound ||Hv - lambda v|| / max(1, |lambda|)")->capture_default_str();
  solve->add_option("--max-iterations", cfg.max_iterations, "outer iterations before giving up (exit 3)")->capture_default_str();
  solve->add_option("--cluster-tol", cfg.cluster_tol, "relative tolerance for multiplicity clusters")->capture_default_str();
  solve->add_option("--trace", cfg.trace, "include the eigenfunction trace of this eigenvalue index");
  solve->add_option("--trace-output", cfg.trace_output, "write the trace as x,row_label,value CSV to this file");

  auto* zeta = app.add_subcommand("zeta", "spectral zeta value and poles; the j list is one period");
  add_common(zeta, cfg);
  zeta->add_option("--s", cfg.s_re, "real part of s")->capture_default_str();
  zeta->add_option("--s-imag", cfg.s_im, "imaginary part of s")->capture_default_str();
  zeta->add_option("--poles", cfg.poles, "list poles with |m| <= this")->capture_default_str();
  zeta->add_flag("--published-lattice", cfg.published_lattice, "use the coarser pole lattice with step 2 T pi");

  auto* casimir = app.add_subcommand("casimir", "regularised plate energy and Casimir force");
  add_common(casimir, cfg, false);
  add_plates(casimir, cfg);
  casimir->add_option("--step", cfg.step, "finite-difference step of the force oracle")->capture_default_str();

  auto* census = app.add_subcommand("census", "shape counts of F_level");
  add_common(census, cfg);
  census->add_option("--level", cfg.level, "graph level n")->required();
  census->add_flag("--brute", cfg.brute, "also decompose the built graph and compare");
  census->add_option("--region", cfg.region, "split the decomposition by region (square-well)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), 2);
  }

  try {
    apply_thread_cap();
    std::string out;
    if (*describe) out = cmd_describe(cfg);
    else if (*spectrum) out = cmd_spectrum(cfg);
    else if (*solve) out = cmd_solve(cfg);
    else if (*zeta) out = cmd_zeta(cfg);
    else if (*casimir) out = cmd_casimir(cfg);
    else if (*census) out = cmd_census(cfg);
    emit(cfg.common, out);
  } catch (const PoleError& e) {
    return fail("pole", e.what(), 2);
  } catch (const SequenceTooShort& e) {
    return fail("sequence_too_short", e.what(), 2);
  } catch (const std::invalid_argument& e) {  // ValidationError and malformed numbers
    return fail("validation", e.what(), 2);
  } catch (const std::overflow_error& e) {
    return fail("overflow", e.what(), 2);
  } catch (const SolverError& e) {
    return fail("solver", e.what(), 3);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 1);
  }
  return 0;
}
