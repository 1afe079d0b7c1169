#pragma once

// Command-line front end. run() is the whole program minus process setup so
// that tests can drive it with in-memory streams.
//
// Exit codes: 0 success, 1 NOT_FOUND (or a verdict other than IN under
// --expect-in), 2 usage error, 3 input-format error.

#include "hyperbisect/gf2poly.hpp"
#include "hyperbisect/io.hpp"
#include "hyperbisect/lambda.hpp"
#include "hyperbisect/momentcurve.hpp"
#include "hyperbisect/parity.hpp"
#include "hyperbisect/solver.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperbisect::cli {

inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;
inline constexpr int kUsage = 2;
inline constexpr int kInputFormat = 3;

inline constexpr const char* kSeedEnv = "HYPERBISECT_SEED";

// Expansion cost guard for reporting the surviving monomial count.
inline constexpr double kExpansionBudget = 5e7;

namespace detail {

inline std::vector<Rational> parse_param_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(parse_rational(item));
    } catch (const std::invalid_argument& e) {
      throw io::format_error(std::string("bad parameter: ") + e.what());
    }
  }
  if (out.empty()) throw io::format_error("empty --params list");
  return out;
}

inline std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv(kSeedEnv); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw io::format_error(std::string(kSeedEnv) + " is not an unsigned integer");
  }
  return 0;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bisecting measures with hyperplane arrangements", "hyperbisect"};
  app.require_subcommand(1);

  // lambda
  auto* lam = app.add_subcommand("lambda", "membership verdicts and frontier tables");
  lam->require_subcommand(1);
  std::uint64_t d = 0, j = 0, k = 0;
  std::string format;
  bool expect_in = false;
  auto* check = lam->add_subcommand("check", "verdict for one triple (d, j, k)");
  check->add_option("d", d)->required()->check(CLI::PositiveNumber);
  check->add_option("j", j)->required()->check(CLI::PositiveNumber);
  check->add_option("k", k)->required()->check(CLI::PositiveNumber);
  check->add_flag("--expect-in", expect_in, "exit 1 unless the verdict is IN");
  check->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  std::uint64_t table_k = 0, jmax = 0, dmax_search = 0;
  auto* table = lam->add_subcommand("table", "minimal certified d per j");
  table->add_option("--k", table_k)->required()->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 20));
  table->add_option("--jmax", jmax)->required()->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 20));
  table->add_option("--dmax-search", dmax_search, "search bound for d (default 4*j)")
      ->check(CLI::PositiveNumber);
  table->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  std::string out_file;
  auto* figure = lam->add_subcommand("figure", "SVG scatter of the frontier table");
  figure->add_option("--k", table_k)->required()->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 20));
  figure->add_option("--jmax", jmax)->required()->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 20));
  figure->add_option("--dmax-search", dmax_search)->check(CLI::PositiveNumber);
  figure->add_option("--out", out_file)->required();

  // ideal
  auto* ideal = app.add_subcommand("ideal", "ideal membership of (t_1+...+t_k)^j");
  ideal->require_subcommand(1);
  auto* member = ideal->add_subcommand("member", "is (t_1+...+t_k)^j in <t_i^(d+1)>?");
  member->add_option("d", d)->required()->check(CLI::PositiveNumber);
  member->add_option("j", j)->required()->check(CLI::PositiveNumber);
  member->add_option("k", k)->required()->check(CLI::PositiveNumber);
  member->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  // parity
  std::uint64_t ell = 0;
  auto* par = app.add_subcommand("parity", "parity of the arrangement counts");
  par->require_subcommand(1);
  auto* lemma1 = par->add_subcommand("lemma1", "parity of (1/k!) C(dk; d,...,d)");
  lemma1->add_option("d", d)->required()->check(CLI::PositiveNumber);
  lemma1->add_option("k", k)->required()->check(CLI::PositiveNumber);
  lemma1->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  auto* lemma2 = par->add_subcommand("lemma2", "parity of the anchored count");
  lemma2->add_option("d", d)->required()->check(CLI::PositiveNumber);
  lemma2->add_option("k", k)->required()->check(CLI::PositiveNumber);
  lemma2->add_option("ell", ell)->required()->check(CLI::PositiveNumber);
  lemma2->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  // count / enumerate
  auto* count = app.add_subcommand("count", "closed-form number of bisecting arrangements");
  count->add_option("d", d)->required()->check(CLI::PositiveNumber);
  count->add_option("k", k)->required()->check(CLI::PositiveNumber);
  count->add_option("--ell", ell);
  count->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  std::string params_text;
  auto* enumerate = app.add_subcommand("enumerate", "exact bisecting arrangements of moment-curve intervals");
  enumerate->add_option("d", d)->required()->check(CLI::PositiveNumber);
  enumerate->add_option("k", k)->required()->check(CLI::PositiveNumber);
  enumerate->add_option("--ell", ell);
  enumerate->add_option("--params", params_text, "comma-separated interval endpoints t1,t2,...")->required();

  // solve
  std::string input;
  double tol = testmap::SolverConfig{}.tolerance;
  std::optional<std::uint64_t> seed_flag;
  std::size_t restarts = testmap::SolverConfig{}.max_restarts;
  auto* solve = app.add_subcommand("solve", "numerical bisection of discrete measures");
  solve->add_option("--input", input)->required();
  solve->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  solve->add_option("--tol", tol)->check(CLI::PositiveNumber);
  solve->add_option("--seed", seed_flag);
  solve->add_option("--restarts", restarts)->check(CLI::PositiveNumber);

  std::vector<const char*> argv{"hyperbisect"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    for (const auto* sub : {lam, ideal, par}) {
      if (sub->parsed()) {
        err << sub->help();
        return kUsage;
      }
    }
    err << app.help();
    return kUsage;
  }

  auto json_out = [&](const nlohmann::json& doc) { out << doc.dump(2) << "\n"; };

  try {
    if (check->parsed()) {
      const auto v = lambda::verdict(d, j, k);
      if (format == "json") {
        json_out(io::to_json(v));
      } else {
        out << io::to_text(v) << "\n";
      }
      return expect_in && v.status != lambda::Status::in ? kNegative : kOk;
    }
    if (table->parsed()) {
      const auto t = lambda::frontier_table(table_k, jmax, dmax_search);
      if (format == "json") {
        json_out(io::to_json(t));
      } else {
        out << io::to_csv(t);
      }
      return kOk;
    }
    if (figure->parsed()) {
      const auto t = lambda::frontier_table(table_k, jmax, dmax_search);
      std::ofstream f(out_file);
      if (!f) {
        err << "error: cannot write " << out_file << "\n";
        return kInputFormat;
      }
      f << io::to_svg(t);
      out << "wrote " << out_file << "\n";
      return kOk;
    }
    if (member->parsed()) {
      const bool is_member = gf2::ideal_member(j, k, d);
      std::optional<std::size_t> monomials;
      if (static_cast<double>(j) * std::pow(static_cast<double>(d + 1), static_cast<double>(k)) *
              static_cast<double>(k) <= kExpansionBudget) {
        const auto poly = gf2::truncated_power_of_sum(static_cast<std::uint32_t>(j),
                                                      static_cast<std::uint32_t>(k),
                                                      static_cast<std::uint32_t>(d));
        if (poly.is_zero() != is_member) {
          throw std::logic_error("expansion and carry-free search disagree");
        }
        monomials = poly.size();
      }
      const auto witness = gf2::carry_free_composition(j, k, d);
      if (format == "json") {
        nlohmann::json doc{{"d", d}, {"j", j}, {"k", k}, {"member", is_member},
                           {"monomials", monomials ? nlohmann::json(*monomials) : nlohmann::json(nullptr)},
                           {"witness", witness ? nlohmann::json(*witness) : nlohmann::json(nullptr)}};
        json_out(doc);
      } else {
        out << "member=" << (is_member ? "true" : "false")
            << " monomials=" << (monomials ? std::to_string(*monomials) : std::string("unknown"));
        if (witness) {
          out << " witness=(";
          for (std::size_t i = 0; i < witness->size(); ++i) out << (i ? "," : "") << (*witness)[i];
          out << ")";
        }
        out << "\n";
      }
      return kOk;
    }
    if (lemma1->parsed() || lemma2->parsed()) {
      const auto p = lemma1->parsed() ? parity::lemma_i_parity(d, k) : parity::lemma_ii_parity(d, k, ell);
      if (format == "json") {
        nlohmann::json doc{{"d", d}, {"k", k}, {"parity", parity::to_string(p)}};
        if (lemma2->parsed()) doc["ell"] = ell;
        json_out(doc);
      } else {
        out << parity::to_string(p) << "\n";
      }
      return kOk;
    }
    if (count->parsed()) {
      const auto c = moment::count_bisections(d, k, ell);
      if (format == "json") {
        json_out(nlohmann::json{{"d", d}, {"k", k}, {"ell", ell}, {"count", c.str()}});
      } else {
        out << c.str() << "\n";
      }
      return kOk;
    }
    if (enumerate->parsed()) {
      const moment::IntervalFamily family(d, detail::parse_param_list(params_text), ell);
      const auto e = moment::enumerate_bisections(family, k);
      if (!e.generic()) {
        err << "warning: " << e.rejected << " of " << e.candidates
            << " candidates failed verification; the family is not in general position\n";
      }
      json_out(io::enumeration_to_json(family, k, e));
      return kOk;
    }
    if (solve->parsed()) {
      std::ifstream f(input);
      if (!f) throw io::format_error("cannot read " + input);
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(f);
      } catch (const nlohmann::json::parse_error& e) {
        throw io::format_error(std::string("invalid JSON: ") + e.what());
      }
      const auto ms = io::measures_from_json(doc);
      testmap::SolverConfig cfg;
      cfg.tolerance = tol;
      cfg.max_restarts = restarts;
      cfg.seed = detail::resolve_seed(seed_flag);
      const auto r = testmap::solve_bisection(ms.measures, k, ms.d, cfg);
      json_out(io::to_json(r));
      return r.status == testmap::SolveStatus::found ? kOk : kNegative;
    }
  } catch (const io::format_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputFormat;
  } catch (const degenerate_input& e) {
    err << "error: " << e.what() << "\n";
    return kInputFormat;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace hyperbisect::cli
