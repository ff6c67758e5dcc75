#pragma once

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pbracket/calibrate.hpp"
#include "pbracket/dsl/parser.hpp"
#include "pbracket/oracle/checks.hpp"
#include "pbracket/serialize.hpp"
#include "pbracket/verify.hpp"

namespace pbracket::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr const char* kDefaultConfig = "pbracket.json";

/// A Planck parameter given on the command line: a rational value or a symbol name.
struct HbarArg {
  std::optional<Rational> value;
  std::string symbol = "h";
};

/// Rational literal with optional sign: "3", "-1/2", "0.25".
inline Rational parse_rational(const std::string& text) {
  dsl::ExprPtr e = dsl::parse(text);
  bool negative = false;
  const dsl::Expr* node = e.get();
  if (node->kind == dsl::Expr::Kind::kNeg) {
    negative = true;
    node = node->lhs.get();
  }
  if (node->kind != dsl::Expr::Kind::kNumber) throw SyntaxError("expected a rational number, got '" + text + "'", 1, 1);
  return negative ? Rational(-node->number) : node->number;
}

inline HbarArg parse_hbar(const std::string& text) {
  HbarArg h;
  if (!text.empty() && std::isalpha(static_cast<unsigned char>(text[0]))) {
    for (char c : text)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
        throw SyntaxError("invalid Planck symbol '" + text + "'", 1, 1);
    h.symbol = text;
  } else {
    h.value = parse_rational(text);
  }
  return h;
}

inline int parse_signature_flag(const std::string& text) {
  if (text.rfind("n=", 0) != 0) throw SyntaxError("--signature expects n=<dof>", 1, 1);
  const std::string digits = text.substr(2);
  if (digits.empty() || digits.size() > 2 || !std::all_of(digits.begin(), digits.end(), ::isdigit))
    throw SyntaxError("--signature expects a positive integer dof", 1, 3);
  int n = std::stoi(digits);
  if (n < 1) throw InvalidSignature("dof_per_sector must be positive");
  return n;
}

/// Runs one command line; output goes to `out`, diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Exact p-mechanical bracket engine", "pbracket"};
  app.fallthrough();
  app.require_subcommand(1);

  bool as_json = false;
  std::string signature_flag;
  std::string config_flag;
  app.add_flag("--json", as_json, "Emit JSON instead of text");
  app.add_option("--signature", signature_flag, "Signature as n=<dof per sector>");
  app.add_option("--config", config_flag, "Configuration file (JSON)");

  std::string e1, e2, hbar_text = "h", h1_text, h2_text, rule = "weyl", heff1, heff2;
  std::uint64_t seed = 1;
  bool write_config = false;
  bool show_terms = false;

  auto* bracket = app.add_subcommand("bracket", "Brackets of two expressions");
  bracket->require_subcommand(1);
  auto* universal = bracket->add_subcommand("universal", "Universal bracket (k1*k2 - k2*k1)(A1 + A2)");
  universal->add_option("e1", e1)->required();
  universal->add_option("e2", e2)->required();
  auto* qc = bracket->add_subcommand("qc", "Quantum-classical bracket of the images");
  qc->add_option("e1", e1)->required();
  qc->add_option("e2", e2)->required();
  qc->add_option("--hbar", hbar_text, "Planck parameter: symbol or rational");
  qc->add_flag("--terms", show_terms, "Also print the three terms");

  auto* rep = app.add_subcommand("rep", "Representations of an element");
  rep->require_subcommand(1);
  auto* qq = rep->add_subcommand("qq", "Quantum-quantum image");
  qq->add_option("e", e1)->required();
  qq->add_option("--h1", h1_text, "Rational value of h1");
  qq->add_option("--h2", h2_text, "Rational value of h2");
  auto* rqc = rep->add_subcommand("qc", "Quantum-classical image");
  rqc->add_option("e", e1)->required();
  rqc->add_option("--hbar", hbar_text, "Planck parameter: symbol or rational");

  auto* mech = app.add_subcommand("mechanise", "Mechanise a classical polynomial");
  mech->add_option("expr", e1)->required();
  mech->add_option("--rule", rule, "Mechanisation rule");

  auto* heff = app.add_subcommand("heff", "Effective Planck constant h1 h2 / (h1 + h2)");
  heff->add_option("h1", heff1)->required();
  heff->add_option("h2", heff2)->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "Independent oracles");
  oracle_cmd->require_subcommand(1);
  auto* oracle_check = oracle_cmd->add_subcommand("check", "Run the oracle battery");
  oracle_check->add_option("--seed", seed, "Random seed");

  auto* calibrate = app.add_subcommand("calibrate", "Search the convention space");
  calibrate->add_flag("--write", write_config, "Store the chosen convention in the config file");

  auto* verify = app.add_subcommand("verify", "Regression suites");
  verify->require_subcommand(1);
  auto* verify_paper_cmd = verify->add_subcommand("paper", "Check every claim in order");
  verify_paper_cmd->add_option("--seed", seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    std::string config_path = kDefaultConfig;
    bool explicit_path = false;
    if (const char* env = std::getenv("PBRACKET_CONFIG"); env != nullptr && *env != '\0') {
      config_path = env;
      explicit_path = true;
    }
    if (!config_flag.empty()) {
      config_path = config_flag;
      explicit_path = true;
    }
    // A missing file is fine for the default path, and for calibrate --write which creates it.
    const bool creating = calibrate->parsed() && write_config;
    Config config;
    if (std::filesystem::exists(config_path)) {
      config = load_config(config_path);
    } else if (explicit_path && !creating) {
      throw Error("cannot open config '" + config_path + "'");
    }
    if (!signature_flag.empty()) config.dof_per_sector = parse_signature_flag(signature_flag);
    const GroupSignature sig(config.dof_per_sector, config.convention);

    auto element = [&](const std::string& src) { return dsl::eval_element(*dsl::parse(src, sig.dof()), sig, rule); };

    if (universal->parsed()) {
      AObservable r = universal_bracket(element(e1), element(e2));
      out << (as_json ? to_json(r).dump(2) : to_delta_string(r)) << "\n";
      return kExitOk;
    }
    if (qc->parsed()) {
      HbarArg h = parse_hbar(hbar_text);
      QcBracketTerms t = qc_bracket_terms(rep_qc(element(e1)), rep_qc(element(e2)));
      auto fix = [&](const HybridObservable& x) { return h.value ? x.substitute_hbar(*h.value) : x; };
      const HbarNames names{h.symbol, "h2"};
      if (as_json) {
        Json j = to_json(fix(t.total));
        if (show_terms)
          j = {{"total", j},
               {"commutator_term", to_json(fix(t.commutator_term))},
               {"poisson_term", to_json(fix(t.poisson_term))},
               {"jet_term", to_json(fix(t.jet_term))}};
        out << j.dump(2) << "\n";
      } else {
        out << to_string(fix(t.total), names) << "\n";
        if (show_terms) {
          out << "  commutator term: " << to_string(fix(t.commutator_term), names) << "\n";
          out << "  poisson term:    " << to_string(fix(t.poisson_term), names) << "\n";
          out << "  jet term:        " << to_string(fix(t.jet_term), names) << "\n";
        }
      }
      return kExitOk;
    }
    if (qq->parsed()) {
      WeylOperator w = rep_qq(element(e1));
      if (!h1_text.empty()) {
        Rational v = parse_rational(h1_text);
        if (v == 0) throw ZeroPlanck();
        w = w.substitute(1, v);
      }
      if (!h2_text.empty()) {
        Rational v = parse_rational(h2_text);
        if (v == 0) throw ZeroPlanck();
        w = w.substitute(2, v);
      }
      out << (as_json ? to_json(w).dump(2) : to_string(w)) << "\n";
      return kExitOk;
    }
    if (rqc->parsed()) {
      HbarArg h = parse_hbar(hbar_text);
      HybridObservable r = rep_qc(element(e1));
      if (h.value) r = r.substitute_hbar(*h.value);
      out << (as_json ? to_json(r).dump(2) : to_string(r, {h.symbol, "h2"})) << "\n";
      return kExitOk;
    }
    if (mech->parsed()) {
      dsl::ExprPtr e = dsl::parse(e1, sig.dof());
      if (e->uses_delta()) {
        const dsl::Expr* d = e->first_delta();
        throw SyntaxError("mechanise expects a classical expression", d->pos.line, d->pos.column);
      }
      Element r = mechanise_plugin(dsl::eval_classical(*e, sig.dof()), rule, sig);
      if (as_json) {
        out << to_json(r).dump(2) << "\n";
      } else {
        out << to_delta_string(r) << "\n";
      }
      return kExitOk;
    }
    if (heff->parsed()) {
      Rational a = parse_rational(heff1);
      Rational b = parse_rational(heff2);
      Rational r = h_eff(a, b);
      if (as_json) {
        out << Json{{"h1", detail::rational_json(a)}, {"h2", detail::rational_json(b)}, {"h_eff", detail::rational_json(r)}}
                   .dump(2)
            << "\n";
      } else {
        out << to_string(r) << "\n";
      }
      return kExitOk;
    }
    if (oracle_check->parsed()) {
      auto reports = oracle::run_oracle_checks(config.convention, seed);
      bool ok = true;
      Json arr = Json::array();
      for (const auto& r : reports) {
        ok = ok && r.passed;
        arr.push_back(oracle::to_json(r));
      }
      if (as_json) {
        out << arr.dump(2) << "\n";
      } else {
        for (const auto& r : reports)
          out << (r.passed ? "PASS " : "FAIL ") << r.check << " inputs=" << r.inputs_hash
              << " max_abs_error=" << r.max_abs_error << "\n";
      }
      return ok ? kExitOk : kExitFailure;
    }
    if (calibrate->parsed()) {
      CalibrationReport r = calibrate_conventions();
      if (as_json) {
        Json passing = Json::array();
        for (const auto& t : r.passing) passing.push_back(to_json(t));
        out << Json{{"examined", r.examined},
                    {"passing", passing},
                    {"chosen", to_json(r.chosen)},
                    {"downstream_identical", r.downstream_identical}}
                   .dump(2)
            << "\n";
      } else {
        out << "examined " << r.examined << " tuples, " << r.passing.size() << " pass\n";
        for (const auto& t : r.passing) out << "  " << to_string(t) << "\n";
        out << "chosen " << to_string(r.chosen) << "\n";
        out << "downstream brackets " << (r.downstream_identical ? "identical" : "differ") << " across passing tuples\n";
      }
      if (write_config) {
        Config c = config;
        c.convention = r.chosen;
        save_config(c, config_path);
        if (!as_json) out << "wrote " << config_path << "\n";
      }
      return kExitOk;
    }
    if (verify_paper_cmd->parsed()) {
      VerifyReport r = verify_paper(config.convention, seed);
      if (as_json) {
        Json j = to_json(r);
        j["convention"] = to_json(r.convention);
        out << j.dump(2) << "\n";
      } else {
        out << to_text(r);
      }
      return r.all_passed() ? kExitOk : kExitFailure;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NoConsistentConvention& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace pbracket::cli
