#include "plumbroot/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "plumbroot/admissible.hpp"
#include "plumbroot/invariance.hpp"
#include "plumbroot/io.hpp"
#include "plumbroot/root.hpp"
#include "plumbroot/series.hpp"
#include "plumbroot/spinc.hpp"

namespace plumbroot {

namespace {

const char* const kGrammar =
    "usage: plumbroot <check|spinc|root|zhat|zz|oracle|verify|conjcheck> <file> [--k CSV] "
    "[--spinc auto] [--family fhat|fhat+|fhat-|seeds:<file>] [--order RAT] [--top INT|auto] "
    "[--format json|dot|text] [--moves INT] [--trials INT] [--seed INT]";

struct UsageError {
  std::string message;
};

struct Options {
  std::string command, file;
  std::string k_csv, spinc, family = "fhat", order = "10", top = "auto", format = "json";
  int moves = 5, trials = 100;
  std::uint64_t seed = 1;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::MalformedInput, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::int64_t parse_int(const std::string& s, const std::string& what) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw UsageError{what + ": not an integer: '" + s + "'"};
  }
  return v;
}

IntVec parse_csv(const std::string& csv) {
  IntVec out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    out.push_back(parse_int(item, "--k"));
  }
  if (out.empty()) throw UsageError{"--k: empty vector"};
  return out;
}

// Flags that need no input file, checked before any computation.
struct Validated {
  Rational order;
  std::optional<std::int64_t> top;
  std::optional<IntVec> k;
};

Validated validate(const Options& o) {
  Validated v;
  try {
    v.order = Rational::parse(o.order);
  } catch (const Error&) {
    throw UsageError{"--order: not a rational: '" + o.order + "'"};
  }
  if (v.order.sign() < 0) throw UsageError{"--order must be non-negative"};
  if (o.top != "auto") v.top = parse_int(o.top, "--top");
  if (!o.k_csv.empty() && !o.spinc.empty()) throw UsageError{"--k and --spinc are exclusive"};
  if (!o.k_csv.empty()) v.k = parse_csv(o.k_csv);
  const std::string& f = o.family;
  if (f != "fhat" && f != "fhat+" && f != "fhat-" && f.rfind("seeds:", 0) != 0) {
    throw UsageError{"--family: expected fhat, fhat+, fhat- or seeds:<file>"};
  }
  if (o.format != "json" && o.command != "root") {
    throw UsageError{"--format " + o.format + " applies to root only"};
  }
  static const std::vector<std::string> needs_k = {"root", "zhat", "zz", "oracle", "conjcheck"};
  const bool wants_k = std::find(needs_k.begin(), needs_k.end(), o.command) != needs_k.end();
  if (wants_k && !v.k && o.spinc.empty()) {
    throw UsageError{o.command + " needs --k CSV or --spinc auto"};
  }
  return v;
}

AdmissibleFamily make_family(const std::string& name) {
  if (name == "fhat") return fhat_family();
  if (name == "fhat+") return fhat_plus_family();
  if (name == "fhat-") return fhat_minus_family();
  return family_from_seeds(parse_seeds(read_file(name.substr(6))));
}

SpincRepK resolve_k(const Plumbing& p, const Validated& v) {
  if (v.k) {
    require_characteristic(p, *v.k);
    return *v.k;
  }
  const std::int64_t det = IntersectionMatrix(p).det();
  if (det != 1 && det != -1) {
    throw UsageError{"--spinc auto needs |det M| = 1 (here " + std::to_string(det) +
                     "); pass --k"};
  }
  return enumerate_spinc(p).front();
}

int execute(const Options& o, const Validated& v, std::ostream& out) {
  const Plumbing p = parse_plumbing(read_file(o.file));
  using nlohmann::ordered_json;

  if (o.command == "check") {
    IntersectionMatrix m(p);
    const std::int64_t det = m.det();
    out << ordered_json{{"negative_definite", is_negative_definite(m)},
                        {"det", det},
                        {"spinc_count", det < 0 ? -det : det}}
               .dump()
        << "\n";
    return kExitOk;
  }
  if (o.command == "spinc") {
    auto classes = enumerate_spinc(p);
    out << ordered_json{{"det_abs", classes.size()}, {"count", classes.size()}}.dump() << "\n";
    for (const auto& k : classes) {
      out << ordered_json{{"k", k}, {"self_conjugate", is_self_conjugate(p, k)}}.dump() << "\n";
    }
    return kExitOk;
  }

  const AdmissibleFamily family = make_family(o.family);
  if (o.command == "verify") {
    if (!is_negative_definite(IntersectionMatrix(p))) {
      throw Error(ErrorKind::NotNegativeDefinite, "plumbing is not negative definite");
    }
    std::mt19937_64 rng(o.seed);
    int failures = 0;
    for (int i = 0; i < o.trials; ++i) {
      MoveTrial trial = random_move_trial(p, rng(), o.moves);
      if (!compare_across_moves(trial, family, v.order)) ++failures;
    }
    out << ordered_json{{"failures", failures}}.dump() << "\n";
    return kExitOk;
  }

  const SpincRepK k = resolve_k(p, v);
  if (o.command == "conjcheck") {
    out << ordered_json{{"conjugation_symmetric", conjugation_check(p, k, family, v.order)}}.dump()
        << "\n";
    return kExitOk;
  }
  const LatticeContext ctx = LatticeContext::minimal(p, k);
  if (o.command == "root") {
    WeightedGradedRoot root = build_root(ctx, family, {v.top, v.order});
    if (o.format == "dot") {
      out << root_to_dot(root);
    } else if (o.format == "text") {
      out << root_to_text(root);
    } else {
      out << root_to_json(root).dump() << "\n";
    }
    return kExitOk;
  }
  const TwoVarSeries series = two_var_series(ctx, family, v.order);
  if (o.command == "zz") {
    out << series_to_json(series).dump() << "\n";
  } else if (o.command == "zhat") {
    out << series_to_json(specialize_t1(series)).dump() << "\n";
  } else {  // oracle
    QSeries oracle = zhat_oracle(p, ctx.a(), v.order);
    out << ordered_json{{"agree", series_equal(oracle, specialize_t1(series))},
                        {"series", series_to_json(oracle)}}
               .dump()
        << "\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted graded roots and two-variable series of plumbed 3-manifolds",
               "plumbroot"};
  Options o;
  app.add_option("command", o.command, "subcommand")
      ->required()
      ->check(CLI::IsMember(
          {"check", "spinc", "root", "zhat", "zz", "oracle", "verify", "conjcheck"}));
  app.add_option("file", o.file, "plumbing JSON {\"weights\":[...],\"edges\":[[i,j],...]}")
      ->required();
  app.add_option("--k", o.k_csv, "spin^c representative k, comma separated");
  app.add_option("--spinc", o.spinc, "auto: the unique class of an integer homology sphere")
      ->check(CLI::IsMember({"auto"}));
  app.add_option("--family", o.family, "fhat, fhat+, fhat- or seeds:<file>");
  app.add_option("--order", o.order, "series order N (rational)");
  app.add_option("--top", o.top, "top level of the root, or auto");
  app.add_option("--format", o.format, "root output format")
      ->check(CLI::IsMember({"json", "dot", "text"}));
  app.add_option("--moves", o.moves, "maximum moves per verify trial")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--trials", o.trials, "verify trials")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", o.seed, "verify seed");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << kGrammar << "\n";
    return kExitUsage;
  }

  try {
    Validated v = validate(o);
    return execute(o, v, out);
  } catch (const UsageError& e) {
    err << e.message << "\n" << kGrammar << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    out << error_to_json(e).dump() << "\n";
    return kExitDomain;
  }
}

}  // namespace plumbroot
