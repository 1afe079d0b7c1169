#pragma once

// Wire formats: arrangements and measures as JSON, frontier tables as CSV,
// JSON and SVG.

#include "hyperbisect/lambda.hpp"
#include "hyperbisect/momentcurve.hpp"
#include "hyperbisect/solver.hpp"
#include "hyperbisect/testmap.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperbisect::io {

using nlohmann::json;

// Malformed input files or literals (as opposed to bad parameter values).
class format_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- exact arrangements ---------------------------------------------------

inline json to_json(const moment::OrientedHyperplane& h) {
  json normal = json::array();
  for (const auto& x : h.normal()) normal.push_back(to_fraction_string(x));
  return json{{"normal", normal}, {"offset", to_fraction_string(h.offset())}};
}

inline json to_json(const moment::Arrangement& arr) {
  json out = json::array();
  for (const auto& h : arr.hyperplanes) out.push_back(to_json(h));
  return out;
}

inline Rational rational_from_json(const json& v) {
  if (!v.is_string()) throw format_error("rational must be a string \"p/q\"");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw format_error(e.what());
  }
}

inline moment::OrientedHyperplane hyperplane_from_json(const json& v) {
  if (!v.is_object() || !v.contains("normal") || !v.contains("offset") || !v["normal"].is_array()) {
    throw format_error("hyperplane must be {\"normal\": [...], \"offset\": ...}");
  }
  std::vector<Rational> normal;
  for (const auto& x : v["normal"]) normal.push_back(rational_from_json(x));
  try {
    return moment::OrientedHyperplane(std::move(normal), rational_from_json(v["offset"]));
  } catch (const std::exception& e) {
    throw format_error(e.what());
  }
}

inline moment::Arrangement arrangement_from_json(const json& v) {
  if (!v.is_array()) throw format_error("arrangement must be a JSON array of hyperplanes");
  moment::Arrangement arr;
  for (const auto& h : v) arr.hyperplanes.push_back(hyperplane_from_json(h));
  return arr;
}

inline json enumeration_to_json(const moment::IntervalFamily& family, std::size_t k,
                                const moment::Enumeration& e) {
  json params = json::array();
  for (const auto& t : family.params()) params.push_back(to_fraction_string(t));
  json arrs = json::array();
  for (const auto& a : e.arrangements) arrs.push_back(to_json(a));
  return json{{"d", family.d()},
              {"k", k},
              {"ell", family.anchor_count()},
              {"params", params},
              {"count", e.arrangements.size()},
              {"candidates", e.candidates},
              {"generic", e.generic()},
              {"arrangements", arrs}};
}

// ---- discrete measures ------------------------------------------------------

struct MeasureSet {
  std::size_t d = 0;
  std::vector<testmap::DiscreteMeasure> measures;
};

/// {"d": int, "measures": [{"points": [{"x": [floats], "w": float}]}]}
inline MeasureSet measures_from_json(const json& doc) {
  try {
    if (!doc.is_object()) throw format_error("measure file must be a JSON object");
    if (!doc.contains("d") || !doc["d"].is_number_integer() || doc["d"].get<long long>() < 1) {
      throw format_error("\"d\" must be a positive integer");
    }
    if (!doc.contains("measures") || !doc["measures"].is_array()) {
      throw format_error("\"measures\" must be an array");
    }
    MeasureSet out;
    out.d = doc["d"].get<std::size_t>();
    for (const auto& m : doc["measures"]) {
      if (!m.is_object() || !m.contains("points") || !m["points"].is_array()) {
        throw format_error("each measure needs a \"points\" array");
      }
      std::vector<std::vector<double>> xs;
      std::vector<double> ws;
      for (const auto& p : m["points"]) {
        if (!p.is_object() || !p.contains("x") || !p["x"].is_array()) {
          throw format_error("each point needs an \"x\" array");
        }
        std::vector<double> x;
        for (const auto& c : p["x"]) {
          if (!c.is_number()) throw format_error("coordinates must be numbers");
          x.push_back(c.get<double>());
        }
        double w = 1.0;
        if (p.contains("w")) {
          if (!p["w"].is_number()) throw format_error("weights must be numbers");
          w = p["w"].get<double>();
        }
        xs.push_back(std::move(x));
        ws.push_back(w);
      }
      out.measures.emplace_back(out.d, std::move(xs), std::move(ws));
    }
    if (out.measures.empty()) throw format_error("no measures given");
    return out;
  } catch (const format_error&) {
    throw;
  } catch (const std::exception& e) {
    throw format_error(e.what());
  }
}

inline json measures_to_json(std::size_t d, std::span<const testmap::DiscreteMeasure> measures) {
  json ms = json::array();
  for (const auto& m : measures) {
    json pts = json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
      pts.push_back(json{{"x", m.points()[i]}, {"w", m.weights()[i]}});
    }
    ms.push_back(json{{"points", pts}});
  }
  return json{{"d", d}, {"measures", ms}};
}

inline json to_json(const testmap::SolveResult& r) {
  json hs = json::array();
  for (std::size_t i = 0; i < r.hyperplanes.size(); ++i) {
    hs.push_back(json{{"normal", r.hyperplanes[i].normal},
                      {"offset", r.hyperplanes[i].offset},
                      {"direction", r.directions.empty() ? json(nullptr) : json(r.directions[i])}});
  }
  return json{{"status", r.status == testmap::SolveStatus::found ? "FOUND" : "NOT_FOUND"},
              {"arrangement", r.status == testmap::SolveStatus::found ? hs : json::array()},
              {"imbalances", r.imbalances},
              {"boundary_mass", r.boundary_mass},
              {"restarts_used", r.restarts_used},
              {"seed", r.seed}};
}

// ---- lambda ---------------------------------------------------------------

inline std::string to_text(const lambda::Verdict& v) {
  std::ostringstream os;
  os << "d=" << v.d << " j=" << v.j << " k=" << v.k << " status=" << lambda::to_string(v.status)
     << " certificate=" << lambda::to_string(v.certificate);
  return os.str();
}

inline json to_json(const lambda::Verdict& v) {
  const auto& c = v.certificate;
  auto opt = [](const std::optional<std::uint64_t>& x) { return x ? json(*x) : json(nullptr); };
  return json{{"d", v.d},
              {"j", v.j},
              {"k", v.k},
              {"status", lambda::to_string(v.status)},
              {"certificate",
               {{"kind", lambda::to_string(c.kind)}, {"d0", opt(c.d0)}, {"a", opt(c.a)}, {"ell", opt(c.ell)}}}};
}

inline std::string to_csv(const lambda::FrontierTable& t) {
  auto cell = [](const std::optional<std::uint64_t>& x) { return x ? std::to_string(*x) : std::string(); };
  std::ostringstream os;
  os << "j,d_conjecture,d_thm1,d_thm25i,d_thm25ii\n";
  for (const auto& r : t.rows) {
    os << r.j << ',' << r.d_conjecture << ',' << cell(r.d_thm1) << ',' << cell(r.d_thm25i) << ','
       << cell(r.d_thm25ii) << '\n';
  }
  return os.str();
}

inline json to_json(const lambda::FrontierTable& t) {
  auto opt = [](const std::optional<std::uint64_t>& x) { return x ? json(*x) : json(nullptr); };
  json rows = json::array();
  for (const auto& r : t.rows) {
    rows.push_back(json{{"j", r.j},
                        {"d_conjecture", r.d_conjecture},
                        {"d_thm1", opt(r.d_thm1)},
                        {"d_thm25i", opt(r.d_thm25i)},
                        {"d_thm25ii", opt(r.d_thm25ii)}});
  }
  return json{{"k", t.k},
              {"search_bound", t.search_bound == 0 ? json("4j") : json(t.search_bound)},
              {"rows", rows}};
}

/// Scatter of minimal d against j: conjectured values as filled dots, each
/// proven bound as a ring of its own color and radius.
inline std::string to_svg(const lambda::FrontierTable& t) {
  const double width = 720, height = 480, left = 60, right = 180, top = 30, bottom = 50;
  std::uint64_t jmax = t.rows.empty() ? 1 : t.rows.back().j;
  std::uint64_t dmax = 1;
  for (const auto& r : t.rows) {
    for (auto v : {std::optional<std::uint64_t>(r.d_conjecture), r.d_thm1, r.d_thm25i, r.d_thm25ii}) {
      if (v) dmax = std::max(dmax, *v);
    }
  }
  const double plot_w = width - left - right, plot_h = height - top - bottom;
  auto px = [&](double j) { return left + (j - 0.5) / static_cast<double>(jmax) * plot_w; };
  auto py = [&](double d) { return top + plot_h - (d - 0.5) / static_cast<double>(dmax) * plot_h; };

  std::ostringstream os;
  os << std::fixed << std::setprecision(2);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << left << "\" y=\"18\" font-family=\"sans-serif\" font-size=\"14\">"
     << "minimal d per j, k = " << t.k << "</text>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w << "\" y2=\""
     << top + plot_h << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_h
     << "\" stroke=\"black\"/>\n";
  const std::uint64_t jtick = std::max<std::uint64_t>(1, jmax / 10);
  for (std::uint64_t j = jtick; j <= jmax; j += jtick) {
    os << "<text x=\"" << px(static_cast<double>(j)) << "\" y=\"" << top + plot_h + 18
       << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << j << "</text>\n";
  }
  const std::uint64_t dtick = std::max<std::uint64_t>(1, dmax / 10);
  for (std::uint64_t d = dtick; d <= dmax; d += dtick) {
    os << "<text x=\"" << left - 8 << "\" y=\"" << py(static_cast<double>(d)) + 4
       << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << d << "</text>\n";
  }
  os << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 10
     << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">j</text>\n";
  os << "<text x=\"16\" y=\"" << top + plot_h / 2
     << "\" font-family=\"sans-serif\" font-size=\"12\">d</text>\n";

  struct Series {
    const char* label;
    const char* color;
    double radius;
    bool filled;
  };
  const Series series[] = {{"conjecture ceil(j/k)", "black", 3, true},
                           {"ideal criterion", "#c0392b", 6, false},
                           {"join criterion (i)", "#2471a3", 9, false},
                           {"join criterion (ii)", "#7f8c8d", 12, false}};
  auto mark = [&](const Series& s, double x, double y) {
    os << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"" << s.radius << "\" ";
    if (s.filled) {
      os << "fill=\"" << s.color << "\"/>\n";
    } else {
      os << "fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"/>\n";
    }
  };
  for (const auto& r : t.rows) {
    const double x = px(static_cast<double>(r.j));
    mark(series[0], x, py(static_cast<double>(r.d_conjecture)));
    if (r.d_thm1) mark(series[1], x, py(static_cast<double>(*r.d_thm1)));
    if (r.d_thm25i) mark(series[2], x, py(static_cast<double>(*r.d_thm25i)));
    if (r.d_thm25ii) mark(series[3], x, py(static_cast<double>(*r.d_thm25ii)));
  }
  for (std::size_t i = 0; i < 4; ++i) {
    const double ly = top + 20 + 28 * static_cast<double>(i);
    mark(series[i], left + plot_w + 30, ly);
    os << "<text x=\"" << left + plot_w + 48 << "\" y=\"" << ly + 4
       << "\" font-family=\"sans-serif\" font-size=\"11\">" << series[i].label << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace hyperbisect::io
