// prodlab: evaluate, take limits of, and cross-check infinite products.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "prodlab/prodlab.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace prodlab;

namespace {

enum Exit { kOk = 0, kRefuted = 1, kParse = 2, kNumeric = 3 };

struct RunConfig {
  int precision = 128;
  bool precision_set = false;
  std::string format = "json";
};

// A numeric or usage failure that maps straight to an exit code.
struct CliFailure {
  int code;
  std::string message;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw CliFailure{kParse, "cannot read " + p.string()};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// inline spec text, or the contents of a file of that name
std::string spec_text(const std::string& arg) {
  std::error_code ec;
  if (fs::is_regular_file(arg, ec)) return read_file(arg);
  return arg;
}

Spec parse_or_fail(const std::string& text) {
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw CliFailure{kParse, e.diagnostic()};
  }
}

// "1/1000", "0.001", "1e-3", "2.5E-7"
Rational parse_number(const std::string& s) {
  if (s.find('/') != std::string::npos) return Rational::parse(s);
  std::string mant = s;
  long exp10 = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string::npos) {
    mant = s.substr(0, e);
    try {
      exp10 = std::stol(s.substr(e + 1));
    } catch (...) {
      throw Error(ErrorKind::InvalidArgument, "not a number: '" + s + "'");
    }
  }
  if (const auto dot = mant.find('.'); dot != std::string::npos) {
    exp10 -= static_cast<long>(mant.size() - dot - 1);
    mant.erase(dot, 1);
  }
  if (mant.empty() || mant == "-" || mant.find_first_not_of("-0123456789") != std::string::npos)
    throw Error(ErrorKind::InvalidArgument, "not a number: '" + s + "'");
  Rational q = Rational::parse(mant);
  const Rational ten(10);
  return exp10 >= 0 ? q * ten.pow(exp10) : q / ten.pow(-exp10);
}

std::string bound_string(const std::optional<PrecisionReal>& b) { return b ? b->decimal(6) : "heuristic"; }

void emit(const RunConfig& cfg, const json& doc, std::ostream& out = std::cout) {
  if (cfg.format == "json") {
    out << doc.dump(2) << "\n";
    return;
  }
  // text: one "key: value" line per scalar, nested objects indented
  std::function<void(const json&, int)> walk = [&](const json& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    for (auto it = j.begin(); it != j.end(); ++it) {
      const json& v = it.value();
      if (v.is_object()) {
        out << pad << it.key() << ":\n";
        walk(v, indent + 2);
      } else if (v.is_array()) {
        out << pad << it.key() << ":\n";
        for (const auto& item : v) {
          if (item.is_object()) {
            out << pad << "  -\n";
            walk(item, indent + 4);
          } else {
            out << pad << "  - " << (item.is_string() ? item.get<std::string>() : item.dump()) << "\n";
          }
        }
      } else {
        out << pad << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  };
  walk(doc, 0);
}

json report_json(const EvalReport& r) {
  json j;
  j["method"] = to_string(r.method);
  j["value_decimal"] = r.value.decimal();
  j["terms_or_blocks_used"] = r.terms_or_blocks_used;
  j["precision_bits"] = r.value.precision_bits();
  j["error_bound"] = bound_string(r.error_bound);
  if (r.error_estimate) j["error_estimate"] = r.error_estimate->decimal(6);
  return j;
}

// ---------------------------------------------------------------------------

int cmd_eval(const RunConfig& cfg, const std::string& spec_arg, std::optional<std::uint64_t> periods,
             std::optional<std::uint64_t> fractions, std::optional<std::size_t> blocks) {
  const Spec spec = parse_or_fail(spec_text(spec_arg));
  json doc;
  doc["spec"] = render(spec);
  if (const auto* w = std::get_if<WallisProduct>(&spec)) {
    if (blocks) throw CliFailure{kRefuted, "--blocks applies to block products; use --periods or --fractions"};
    if (periods && fractions) throw CliFailure{kParse, "give either --periods or --fractions"};
    const Rational q = fractions ? wallis_fraction_partial(*w, *fractions) : wallis_partial(*w, periods.value_or(1));
    doc["method"] = "exact-partial";
    doc[fractions ? "fractions" : "periods"] = fractions ? *fractions : periods.value_or(1);
    doc["rational"] = q.to_fraction_string();
    doc["numerator"] = q.numerator().get_str();
    doc["denominator"] = q.denominator().get_str();
    doc["value_decimal"] = PrecisionReal(BigFloat(q, cfg.precision + kGuardBits), cfg.precision).decimal();
  } else if (const auto* c = std::get_if<CatalanProduct>(&spec)) {
    if (periods || fractions) throw CliFailure{kRefuted, "--periods/--fractions apply to Wallis products; use --blocks"};
    const auto r = catalan_block_partial(*c, blocks.value_or(10), cfg.precision);
    doc.update(report_json(r));
  } else {
    throw CliFailure{kRefuted, "eval takes a product, not a claim"};
  }
  emit(cfg, doc);
  return kOk;
}

int cmd_limit(const RunConfig& cfg, const std::string& spec_arg, std::optional<std::string> method,
              const std::string& tol_text, std::uint64_t periods, int levels) {
  const Spec spec = parse_or_fail(spec_text(spec_arg));
  json doc;
  doc["spec"] = render(spec);
  if (const auto* w = std::get_if<WallisProduct>(&spec)) {
    const std::string m = method.value_or("gamma");
    if (m == "gamma") {
      const auto v = eq21_eval(*w, cfg.precision);
      doc["method"] = "gamma";
      doc["value_decimal"] = v.decimal();
      doc["error_bound"] = PrecisionReal(v.slack(), 64).decimal(6);
      if (auto cf = wallis_closed_form(*w)) doc["closed_form"] = cf->render();
    } else if (m == "extrapolate") {
      doc.update(report_json(wallis_limit_extrapolated(*w, periods, levels, cfg.precision)));
    } else {
      throw CliFailure{kRefuted, "method '" + m + "' does not apply to Wallis products (use gamma or extrapolate)"};
    }
  } else if (const auto* c = std::get_if<CatalanProduct>(&spec)) {
    const std::string m = method.value_or("blocks");
    if (m != "blocks")
      throw CliFailure{kRefuted, "method '" + m + "' does not apply to block products (use blocks)"};
    doc.update(report_json(catalan_limit(*c, parse_number(tol_text), cfg.precision)));
  } else {
    throw CliFailure{kRefuted, "limit takes a product, not a claim"};
  }
  emit(cfg, doc);
  return kOk;
}

std::vector<fs::path> claim_files(const std::vector<std::string>& inputs) {
  std::vector<fs::path> out;
  for (const auto& in : inputs) {
    std::error_code ec;
    if (fs::is_directory(in, ec)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::directory_iterator(in))
        if (e.is_regular_file() && e.path().extension() == ".claim") found.push_back(e.path());
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.emplace_back(in);
    }
  }
  return out;
}

int cmd_verify(const RunConfig& cfg, const std::vector<std::string>& inputs, std::uint64_t window,
               const std::string& tol_text) {
  const Rational tol = parse_number(tol_text);
  const auto files = claim_files(inputs);
  if (files.empty()) throw CliFailure{kParse, "no claim files given"};
  json results = json::array();
  int worst = kOk;
  auto rank = [](int code) { return code == kParse ? 3 : code == kNumeric ? 2 : code == kRefuted ? 1 : 0; };
  for (const auto& f : files) {
    json r;
    r["file"] = f.generic_string();
    int code = kOk;
    try {
      const Spec spec = parse(read_file(f));
      const auto* claim = std::get_if<IdentityClaim>(&spec);
      if (!claim) throw CliFailure{kParse, "not a claim"};
      r["claim"] = render(*claim);
      const Verdict v = verify_identity(*claim, window, tol, cfg.precision);
      r["verdict"] = verdict_name(v);
      if (const auto* s = std::get_if<StructuralEqual>(&v)) {
        r["residual"] = s->residual.to_string();
      } else if (const auto* n = std::get_if<NumericEqual>(&v)) {
        r["tolerance"] = n->tolerance.to_string();
        r["lhs_decimal"] = n->lhs.decimal();
        r["rhs_decimal"] = n->rhs.decimal();
      } else if (const auto* x = std::get_if<Refuted>(&v)) {
        r["witness"] = x->witness;
        code = kRefuted;
      } else {
        r["reason"] = std::get<Inconclusive>(v).reason;
        code = kRefuted;
      }
    } catch (const ParseError& e) {
      r["verdict"] = "parse-error";
      r["error"] = e.diagnostic();
      code = kParse;
    } catch (const CliFailure& e) {
      r["verdict"] = "parse-error";
      r["error"] = e.message;
      code = e.code;
    } catch (const Error& e) {
      r["verdict"] = "error";
      r["error"] = e.what();
      code = kNumeric;
    }
    if (rank(code) > rank(worst)) worst = code;
    results.push_back(r);
  }
  json doc;
  doc["claims"] = results;
  doc["all_hold"] = worst == kOk;
  emit(cfg, doc);
  return worst;
}

std::vector<long> parse_k_range(const std::string& s) {
  try {
    if (const auto dots = s.find(".."); dots != std::string::npos) {
      const long a = std::stol(s.substr(0, dots));
      const long b = std::stol(s.substr(dots + 2));
      if (a > b) throw CliFailure{kParse, "empty K range '" + s + "'"};
      std::vector<long> out;
      for (long k = a; k <= b; ++k) out.push_back(k);
      return out;
    }
    return {std::stol(s)};
  } catch (const std::logic_error&) {
    throw CliFailure{kParse, "bad K range '" + s + "' (expected K or A..B)"};
  }
}

int cmd_conjecture(const RunConfig& cfg, const std::string& k_text, std::size_t blocks, const std::string& out_path) {
  const auto ks = parse_k_range(k_text);
  const int p = cfg.precision_set ? cfg.precision : kDefaultConjecturePrecision;
  const auto rep = conjecture_report(ks, p, blocks);
  json doc;
  doc["conjectural"] = true;
  doc["precision_bits"] = p;
  doc["blocks"] = blocks;
  json rows = json::array();
  for (const auto& row : rep.rows) {
    json r;
    r["K"] = row.K;
    r["conjectural"] = row.conjectural;
    r["estimate_decimal"] = row.estimate.value.decimal();
    r["error_bound"] = bound_string(row.estimate.error_bound);
    r["value_decimal"] = row.high_precision.value.decimal();
    r["consistent"] = row.consistent;
    json cands = json::array();
    for (std::size_t i = 0; i < row.candidates.size() && i < 5; ++i) {
      const auto& c = row.candidates[i];
      cands.push_back({{"closed_form", c.render()},
                       {"x", c.x.to_string()},
                       {"y", c.y.to_string()},
                       {"r", c.r.to_string()},
                       {"residual", c.residual.decimal(3)}});
    }
    r["candidates"] = cands;
    rows.push_back(r);
  }
  doc["rows"] = rows;
  if (rep.x_fit) {
    json t;
    t["conjectural"] = true;
    t["x"] = rep.x_fit->render();
    t["y"] = rep.y_fit->render();
    json preds = json::array();
    for (const auto& pr : rep.predictions)
      preds.push_back({{"K", pr.K}, {"x", pr.x.to_string()}, {"y", pr.y.to_string()}, {"matches", pr.matches}});
    t["predictions"] = preds;
    doc["trend"] = t;
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw CliFailure{kNumeric, "cannot write " + out_path};
    emit(cfg, doc, out);
  }
  emit(cfg, doc);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prodlab: Wallis-type and Catalan-type infinite products"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  auto* prec_opt = app.add_option("--precision", cfg.precision, "working precision in bits (default 128)")
                       ->check(CLI::Range(8, 1 << 20));
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "text"}));

  std::string spec;
  std::optional<std::uint64_t> periods, fractions;
  std::optional<std::size_t> blocks;
  auto* eval = app.add_subcommand("eval", "partial product of a spec (inline text or .prod file)");
  eval->add_option("spec", spec)->required();
  eval->add_option("--periods", periods, "Wallis: number of whole periods");
  eval->add_option("--fractions", fractions, "Wallis: number of individual fractions");
  eval->add_option("--blocks", blocks, "block products: number of blocks (default 10)");

  std::optional<std::string> method;
  std::string tol = "1e-6";
  std::uint64_t limit_periods = 16384;
  int levels = 3;
  auto* limit = app.add_subcommand("limit", "limit of a product");
  limit->add_option("spec", spec)->required();
  limit->add_option("--method", method, "gamma | extrapolate | blocks")
      ->check(CLI::IsMember({"gamma", "extrapolate", "blocks"}));
  limit->add_option("--tol", tol, "blocks: tail tolerance, a fraction or decimal");
  limit->add_option("--periods", limit_periods, "extrapolate: periods N");
  limit->add_option("--levels", levels, "extrapolate: Richardson levels")->check(CLI::Range(0, kMaxRichardsonLevels));

  std::vector<std::string> claim_inputs;
  std::uint64_t window = kDefaultWindow;
  std::string verify_tol = "1e-10";
  auto* verify = app.add_subcommand("verify", "verify identity claims (.claim files or directories)");
  verify->add_option("claims", claim_inputs)->required();
  verify->add_option("--window", window, "stream positions compared structurally")->check(CLI::Range(16, 1 << 24));
  verify->add_option("--tol", verify_tol, "tolerance of the numeric fallback");

  std::string k_range;
  std::size_t conj_blocks = kDefaultConjectureBlocks;
  std::string out_path;
  auto* conj = app.add_subcommand("conjecture", "estimate and recognize limits of the general-K block product");
  conj->add_option("--k", k_range, "K or A..B")->required();
  conj->add_option("--blocks", conj_blocks, "blocks in the estimate (default 10)")->check(CLI::Range(1, 64));
  conj->add_option("--out", out_path, "also write the report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }
  cfg.precision_set = prec_opt->count() > 0;

  try {
    if (*eval) return cmd_eval(cfg, spec, periods, fractions, blocks);
    if (*limit) return cmd_limit(cfg, spec, method, tol, limit_periods, levels);
    if (*verify) return cmd_verify(cfg, claim_inputs, window, verify_tol);
    if (*conj) return cmd_conjecture(cfg, k_range, conj_blocks, out_path);
  } catch (const CliFailure& e) {
    std::cerr << "prodlab: " << e.message << "\n";
    return e.code;
  } catch (const Error& e) {
    std::cerr << "prodlab: " << e.what() << "\n";
    return e.kind() == ErrorKind::MixedFamilies ? kRefuted : kNumeric;
  }
  return kOk;
}
