#pragma once

// Canonical serialisation: JSON with sorted keys and every double printed
// as %.17g, and CSV for spectral lines and eigenfunction traces. Output is
// a pure function of the value, so identical runs give identical bytes.

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "laakso/casimir.hpp"
#include "laakso/census.hpp"
#include "laakso/error.hpp"
#include "laakso/numeric.hpp"
#include "laakso/spectrum.hpp"
#include "laakso/zeta.hpp"

namespace laakso {

using json = nlohmann::json;

inline std::string format_double(double v) {
  if (!std::isfinite(v)) throw ValidationError("cannot serialise a non-finite number");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  if (s == "-0") s = "0";
  return s;
}

namespace detail {

inline void dump_string(std::string& out, const std::string& s) {
  out += json(s).dump();  // escaping only
}

inline void dump(std::string& out, const json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map order: sorted keys
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        dump_string(out, it.key());
        out += indent > 0 ? ": " : ":";
        dump(out, it.value(), indent, depth + 1);
      }
      out += nl;
      out += close;
      out += "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      out += nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) {
          out += ",";
          out += nl;
        }
        out += pad;
        dump(out, j[i], indent, depth + 1);
      }
      out += nl;
      out += close;
      out += "]";
      return;
    }
    case json::value_t::number_float: out += format_double(j.get<double>()); return;
    default: out += j.dump(); return;
  }
}

}  // namespace detail

inline std::string canonical_dump(const json& j, int indent = 2) {
  std::string out;
  detail::dump(out, j, indent, 0);
  out += "\n";
  return out;
}

inline json error_record(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

// --- spectra -------------------------------------------------------------

inline json to_json(const SpectralSource& s) {
  return {{"family", s.family}, {"n", s.n}, {"k", s.k}, {"multiplicity", s.multiplicity}};
}

inline json to_json(const SpectralLine& l) {
  json src = json::array();
  for (const auto& s : l.sources) src.push_back(to_json(s));
  json j = {{"lambda", l.lambda}, {"multiplicity", l.multiplicity}, {"sources", src}};
  if (!l.sources.empty()) j["lambda_over_pi2"] = l.coefficient.str();
  return j;
}

inline json lines_to_json(const std::vector<SpectralLine>& lines) {
  json a = json::array();
  for (const auto& l : lines) a.push_back(to_json(l));
  return a;
}

inline SpectralLine line_from_json(const json& j) {
  SpectralLine l;
  l.lambda = j.at("lambda").get<double>();
  l.multiplicity = j.at("multiplicity").get<std::int64_t>();
  if (j.contains("lambda_over_pi2")) l.coefficient = Rational::parse(j.at("lambda_over_pi2").get<std::string>());
  for (const auto& s : j.at("sources")) {
    l.sources.push_back({s.at("family").get<std::string>(), s.at("n").get<int>(), s.at("k").get<std::int64_t>(),
                         s.at("multiplicity").get<std::int64_t>()});
  }
  return l;
}

inline std::vector<SpectralLine> lines_from_json(const json& a) {
  std::vector<SpectralLine> out;
  for (const auto& j : a) out.push_back(line_from_json(j));
  return out;
}

// One row per line: lambda,multiplicity,lambda_over_pi2,sources with sources
// written as family/n/k/multiplicity joined by '|'.
inline std::string lines_to_csv(const std::vector<SpectralLine>& lines) {
  std::string out = "lambda,multiplicity,lambda_over_pi2,sources\n";
  for (const auto& l : lines) {
    out += format_double(l.lambda) + "," + std::to_string(l.multiplicity) + ",";
    if (!l.sources.empty()) out += l.coefficient.str();
    out += ",";
    for (std::size_t i = 0; i < l.sources.size(); ++i) {
      const auto& s = l.sources[i];
      if (i) out += "|";
      out += s.family + "/" + std::to_string(s.n) + "/" + std::to_string(s.k) + "/" + std::to_string(s.multiplicity);
    }
    out += "\n";
  }
  return out;
}

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace detail

inline std::vector<SpectralLine> lines_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string row;
  if (!std::getline(in, row) || row != "lambda,multiplicity,lambda_over_pi2,sources") {
    throw ValidationError("spectral-line CSV has an unexpected header");
  }
  std::vector<SpectralLine> out;
  while (std::getline(in, row)) {
    if (row.empty()) continue;
    const auto f = detail::split(row, ',');
    if (f.size() != 4) throw ValidationError("spectral-line CSV row needs 4 fields: " + row);
    SpectralLine l;
    l.lambda = std::stod(f[0]);
    l.multiplicity = std::stoll(f[1]);
    if (!f[2].empty()) l.coefficient = Rational::parse(f[2]);
    if (!f[3].empty()) {
      for (const auto& src : detail::split(f[3], '|')) {
        const auto p = detail::split(src, '/');
        if (p.size() != 4) throw ValidationError("malformed source '" + src + "'");
        l.sources.push_back({p[0], std::stoi(p[1]), std::stoll(p[2]), std::stoll(p[3])});
      }
    }
    out.push_back(std::move(l));
  }
  return out;
}

// --- numeric ---------------------------------------------------------------

inline json to_json(const EigenResult& r) {
  json vals = json::array();
  for (int i = 0; i < r.eigenvalues.size(); ++i) vals.push_back(r.eigenvalues[i]);
  return {{"eigenvalues", vals},
          {"metadata",
           {{"artifacts_excluded", r.artifacts_excluded},
            {"dimension", r.dimension},
            {"iterations", r.iterations},
            {"max_residual", r.max_residual},
            {"method", r.method},
            {"shift", r.shift}}}};
}

inline std::string trace_to_csv(const std::vector<TracePoint>& trace) {
  std::string out = "x,row_label,value\n";
  for (const auto& t : trace) out += format_double(t.x) + "," + t.row_label + "," + format_double(t.value) + "\n";
  return out;
}

// --- census ------------------------------------------------------------------

inline json to_json(const ShapeCounts& c) {
  return {{"V", c.V}, {"loops", c.loops}, {"crosses", c.crosses}, {"half_crosses", c.half_crosses}};
}

// --- zeta and Casimir ------------------------------------------------------

inline json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline json to_json(const ZetaValue& z) { return {{"s", complex_json(z.s)}, {"value", complex_json(z.value)}, {"mode", z.mode}}; }

inline json to_json(const ZetaPole& p) { return {{"s", complex_json(p.s)}, {"family", p.family}, {"m", p.m}}; }

inline json to_json(const CasimirReport& r) {
  json fam = json::array();
  for (const auto& f : r.energy.families) {
    fam.push_back({{"id", f.id},
                   {"region", f.region == PlateRegion::interior ? "interior" : "exterior"},
                   {"weight", f.weight}});
  }
  return {{"config",
           {{"N", r.config.N}, {"Z", r.config.Z}, {"X0", r.config.X0.str()}, {"X0_value", r.config.X0.to_double()}, {"hbar", r.config.hbar}}},
          {"energy", {{"a", r.energy.a}, {"b", r.energy.b}, {"total", r.energy.total}, {"families", fam}}},
          {"force", r.force},
          {"oracle_force", r.oracle_force},
          {"agreement", r.agreement},
          {"published_force", r.published_force},
          {"published_agreement", r.published_agreement},
          {"attractive", r.attractive}};
}

}  // namespace laakso
