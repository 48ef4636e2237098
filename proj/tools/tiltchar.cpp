// tiltchar: command-line front end for the KL tables, tilting characters and
// the layer-balancing procedure.
//
// Exit codes: 0 ok, 1 internal error, 2 configuration error, 3 range error,
// 4 verification failure.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "tiltchar/balance.hpp"
#include "tiltchar/characters.hpp"
#include "tiltchar/io.hpp"
#include "tiltchar/render.hpp"
#include "tiltchar/verify.hpp"

namespace {

using namespace tiltchar;

enum ExitCode { kOk = 0, kInternal = 1, kConfig = 2, kRange = 3, kVerification = 4 };

/// Raised when a computation completes but a checked claim does not hold.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { Json, Ascii, Latex };

struct JobConfig {
  std::string type;
  std::string cartan_file;
  std::optional<int> max_len;
  std::optional<long long> l;
  std::optional<std::string> alcove;
  std::string parity = "asph";
  std::string format = "ascii";
  std::string blocks_file;
  bool outline_blocks = false;
  int k = 1;
  int i = 0;
  std::string weighting = "factor";
};

Format parse_format(const std::string& f) {
  if (f == "json") return Format::Json;
  if (f == "ascii") return Format::Ascii;
  if (f == "latex") return Format::Latex;
  throw ConfigError("unknown format '" + f + "' (json, ascii, latex)");
}

Parity parse_parity(const std::string& p) {
  if (p == "sph" || p == "spherical") return Parity::Spherical;
  if (p == "asph" || p == "antispherical") return Parity::Antispherical;
  throw ConfigError("unknown parity '" + p + "' (sph, asph)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

RootDatum load_datum(const JobConfig& cfg) {
  if (!cfg.cartan_file.empty()) {
    if (!cfg.type.empty()) throw ConfigError("--type and --cartan are mutually exclusive");
    return RootDatum::parse_cartan_text(read_file(cfg.cartan_file));
  }
  return RootDatum::builtin(cfg.type.empty() ? "A1" : cfg.type);
}

std::string weight_string(const IntVector& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s + ")";
}

// Everything a subcommand needs: the group, tables sized to the job, and the
// resolved alcove if one was given.
struct Context {
  JobConfig cfg;
  Format format;
  AffineWeylGroup group;
  std::optional<AlcoveElement> alcove;
  int max_len;
  std::unique_ptr<KLTables> tables;
  std::optional<std::filesystem::path> cache_dir;

  explicit Context(const JobConfig& c)
      : cfg(c), format(parse_format(c.format)), group(load_datum(c)) {
    if (cfg.max_len && *cfg.max_len < 0) throw ConfigError("--max-len must be non-negative");
    if (cfg.l && *cfg.l < group.coxeter_number())
      throw ConfigError("--l must be at least the Coxeter number " +
                        std::to_string(group.coxeter_number()));
    if (cfg.alcove) alcove = group.parse_word(*cfg.alcove);
    max_len = cfg.max_len.value_or(alcove ? alcove->length() : 4);
    if (alcove && alcove->length() > max_len)
      throw RangeError("alcove " + alcove->label() + " has length " +
                       std::to_string(alcove->length()) + " > --max-len " + std::to_string(max_len));
    tables = std::make_unique<KLTables>(group, max_len);
    if (const char* dir = std::getenv("TILTCHAR_CACHE_DIR"); dir && *dir) {
      cache_dir = dir;
      load_cache(tables->spherical, *cache_dir);
      load_cache(tables->antispherical, *cache_dir);
    }
  }

  ~Context() {
    if (!cache_dir) return;
    try {
      save_cache(tables->spherical, *cache_dir);
      save_cache(tables->antispherical, *cache_dir);
    } catch (const std::exception& e) {
      std::cerr << "warning: could not write KL cache: " << e.what() << "\n";
    }
  }

  const AlcoveElement& require_alcove() const {
    if (!alcove) throw ConfigError("this subcommand needs --alcove WORD");
    return *alcove;
  }

  std::string name(const AlcoveElement& x) const {
    return format == Format::Json ? x.word() : x.label();
  }

  /// Weight legend for every alcove mentioned, when --l is given.
  json weights_json(const std::vector<AlcoveElement>& xs) const {
    json w = json::object();
    for (const auto& x : xs) w[x.word()] = group.weight_of(x, *cfg.l);
    return w;
  }
  std::string weights_text(const std::vector<AlcoveElement>& xs) const {
    std::ostringstream os;
    os << "weights at l = " << *cfg.l << ":\n";
    for (const auto& x : xs) os << "  " << x.label() << " -> " << weight_string(group.weight_of(x, *cfg.l)) << "\n";
    return os.str();
  }
  void emit_weights(json& out, std::ostream& os, const std::vector<AlcoveElement>& xs) const {
    if (!cfg.l) return;
    if (format == Format::Json) out["weights"] = weights_json(xs);
    else if (format == Format::Ascii) os << weights_text(xs);
    else {
      std::istringstream in(weights_text(xs));
      for (std::string line; std::getline(in, line);) os << "% " << line << "\n";
    }
  }
};

template <class Map>
std::vector<AlcoveElement> keys_of(const Map& m) {
  std::vector<AlcoveElement> out;
  for (const auto& [k, v] : m) out.push_back(k);
  return out;
}

// Plain table: fixed-width columns in ASCII, tabular in LaTeX.
std::string render_table(Format f, const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream os;
  if (f == Format::Latex) {
    os << "\\begin{tabular}{" << std::string(header.size(), 'l') << "}\n";
    for (std::size_t c = 0; c < header.size(); ++c) os << (c ? " & " : "") << header[c];
    os << " \\\\\n\\hline\n";
    for (const auto& r : rows) {
      for (std::size_t c = 0; c < r.size(); ++c) os << (c ? " & " : "") << "$" << r[c] << "$";
      os << " \\\\\n";
    }
    os << "\\end{tabular}\n";
    return os.str();
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      os << r[c];
      if (c + 1 < r.size()) os << std::string(width[c] - r[c].size() + 2, ' ');
    }
    os << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
  return os.str();
}

// ---------------------------------------------------------------------------

int cmd_kl(Context& ctx) {
  const Parity par = parse_parity(ctx.cfg.parity);
  const KLTable& tab = ctx.tables->table(par);
  const auto elems = tab.elements();
  std::vector<std::vector<std::string>> canon, inverse, tilde;
  json je = json::array(), ji = json::array(), jt = json::array();
  for (const auto& x : elems) {
    for (const auto& [y, p] : tab.kl_basis(x).entries()) {
      canon.push_back({ctx.name(x), ctx.name(y), p.to_string()});
      je.push_back({{"x", x.word()}, {"y", y.word()}, {"poly", poly_to_json(p)}});
    }
    for (const auto& [y, p] : tab.tilde_basis(x).entries()) {
      tilde.push_back({ctx.name(x), ctx.name(y), p.to_string()});
      jt.push_back({{"x", x.word()}, {"y", y.word()}, {"poly", poly_to_json(p)}});
    }
  }
  for (const auto& y : elems)
    for (const auto& [x, p] : tab.inverse_row(y)) {
      inverse.push_back({ctx.name(x), ctx.name(y), p.to_string()});
      ji.push_back({{"x", x.word()}, {"y", y.word()}, {"poly", poly_to_json(p)}});
    }
  json out = {{"parity", to_string(par)}, {"max_len", ctx.max_len}, {"entries", je},
              {"inverse", ji}, {"tilde", jt}};
  std::ostringstream os;
  ctx.emit_weights(out, os, elems);
  if (ctx.format == Format::Json) {
    std::cout << out.dump(2) << "\n";
    return kOk;
  }
  const std::string sym = par == Parity::Spherical ? "m" : "n";
  const char* pre = ctx.format == Format::Latex ? "% " : "# ";
  std::cout << pre << "canonical basis (" << to_string(par) << "), max_len " << ctx.max_len << "\n"
            << render_table(ctx.format, {"x", "y", sym + "_{y,x}"}, canon) << pre
            << "inverse polynomials\n"
            << render_table(ctx.format, {"x", "y", sym + "^{y,x}"}, inverse) << pre
            << "tilde basis\n"
            << render_table(ctx.format, {"x", "y", "tilde " + sym + "_{y,x}"}, tilde) << os.str();
  return kOk;
}

int cmd_tilt(Context& ctx) {
  const auto& a = ctx.require_alcove();
  const auto column = tilting_column(*ctx.tables, a);
  json polys = json::array();
  std::vector<std::vector<std::string>> rows;
  for (const auto& [b, p] : column) {
    polys.push_back({{"word", b.word()}, {"poly", poly_to_json(p)}});
    rows.push_back({ctx.name(b), p.to_string()});
  }
  json out = {{"alcove", a.word()}, {"polys", polys}};
  std::ostringstream os;
  ctx.emit_weights(out, os, keys_of(column));
  if (ctx.format == Format::Json) std::cout << out.dump(2) << "\n";
  else std::cout << render_table(ctx.format, {"B", "t_{B,A}"}, rows) << os.str();
  return kOk;
}

int cmd_weyl(Context& ctx) {
  const auto& a = ctx.require_alcove();
  const auto lusztig = weyl_simple_mults(*ctx.tables, a);
  const auto soergel = tilting_weyl_mults(*ctx.tables, a);
  json out = {{"alcove", a.word()},
              {"weyl_composition", multiplicities_to_json(lusztig)},
              {"tilting_weyl", multiplicities_to_json(soergel)}};
  auto all = keys_of(lusztig);
  for (const auto& x : keys_of(soergel)) all.push_back(x);
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  std::ostringstream os;
  ctx.emit_weights(out, os, all);
  if (ctx.format == Format::Json) {
    std::cout << out.dump(2) << "\n";
    return kOk;
  }
  auto rows = [&](const Multiplicities& m) {
    std::vector<std::vector<std::string>> r;
    for (const auto& [x, c] : m) r.push_back({ctx.name(x), c.str()});
    return r;
  };
  const char* pre = ctx.format == Format::Latex ? "% " : "# ";
  std::cout << pre << "[Weyl(A) : L(B)]\n" << render_table(ctx.format, {"B", "mult"}, rows(lusztig))
            << pre << "[T(A) : Weyl(B)]\n" << render_table(ctx.format, {"B", "mult"}, rows(soergel))
            << os.str();
  return kOk;
}

int cmd_layers(Context& ctx) {
  const auto& a = ctx.require_alcove();
  const auto g = tilting_layers(*ctx.tables, a);
  std::function<std::string(const AlcoveElement&)> name = [&](const AlcoveElement& x) { return ctx.name(x); };
  json out = {{"alcove", a.word()}, {"layers", diagram_to_json(g, name)}};
  std::vector<AlcoveElement> mentioned;
  for (const auto& [off, layer] : g.layers())
    for (const auto& [x, m] : layer) mentioned.push_back(x);
  std::sort(mentioned.begin(), mentioned.end());
  mentioned.erase(std::unique(mentioned.begin(), mentioned.end()), mentioned.end());
  std::ostringstream os;
  ctx.emit_weights(out, os, mentioned);
  if (ctx.format == Format::Json) std::cout << out.dump(2) << "\n";
  else if (ctx.format == Format::Ascii) std::cout << render_ascii(g, name) << os.str();
  else std::cout << render_latex(g, name) << os.str();
  return kOk;
}

int cmd_partial(Context& ctx) {
  const auto& a = ctx.require_alcove();
  PartialWeighting w;
  if (ctx.cfg.weighting == "factor") w = PartialWeighting::FactorColumn;
  else if (ctx.cfg.weighting == "tilting") w = PartialWeighting::TiltingColumn;
  else throw ConfigError("unknown weighting '" + ctx.cfg.weighting + "' (factor, tilting)");
  const auto order = delta_order(*ctx.tables, a);
  const auto res = partial_character(*ctx.tables, a, ctx.cfg.k, ctx.cfg.i, w);
  json jorder = json::array();
  for (const auto& x : order) jorder.push_back(x.word());
  json out = {{"alcove", a.word()}, {"k", ctx.cfg.k}, {"i", ctx.cfg.i},
              {"weighting", ctx.cfg.weighting}, {"order", jorder},
              {"factors", multiplicities_to_json(res)}};
  std::ostringstream os;
  ctx.emit_weights(out, os, keys_of(res));
  if (ctx.format == Format::Json) {
    std::cout << out.dump(2) << "\n";
    return kOk;
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& [x, c] : res) rows.push_back({ctx.name(x), c.str()});
  const char* pre = ctx.format == Format::Latex ? "% " : "# ";
  std::cout << pre << "filtration order:";
  for (const auto& x : order) std::cout << " " << x.label();
  std::cout << "\n" << render_table(ctx.format, {"lambda", "mult"}, rows) << os.str();
  return kOk;
}

template <class Label, class Order>
void print_balance(const Context& ctx, const BalanceState<Label, Order>& state,
                   const BlockMap<Label, Order>& blocks,
                   const std::function<std::string(const Label&)>& name, json extra,
                   const std::string& verdict) {
  if (ctx.format == Format::Json) {
    json trace = json::array();
    for (const auto& e : state.trace) trace.push_back({{"label", name(e.label)}, {"head_offset", e.head_offset}});
    json out = {{"trace", trace}, {"layers", diagram_to_json(state.layers, name)}};
    for (auto& [k, v] : extra.items()) out[k] = v;
    out["verdict"] = verdict;
    std::cout << out.dump(2) << "\n";
    return;
  }
  if (ctx.format == Format::Latex) {
    std::cout << render_latex_blocks(state, blocks, name, ctx.cfg.outline_blocks);
    std::cout << "% trace:";
    for (const auto& e : state.trace) std::cout << " (" << name(e.label) << "," << e.head_offset << ")";
    std::cout << "\n% verdict: " << verdict << "\n";
    return;
  }
  std::cout << "trace:";
  for (const auto& e : state.trace) std::cout << " (" << name(e.label) << ", " << e.head_offset << ")";
  std::cout << "\n" << render_ascii(state.layers, name) << "verdict: " << verdict << "\n";
}

int cmd_balance(Context& ctx) {
  if (!ctx.cfg.blocks_file.empty()) {
    if (ctx.alcove) throw ConfigError("--alcove and --blocks are mutually exclusive");
    json j;
    try {
      j = json::parse(read_file(ctx.cfg.blocks_file));
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("blocks file: ") + e.what());
    }
    const auto in = blocks_from_json(j);
    std::optional<BalanceState<std::string, RankedOrder>> state;
    try {
      state = balance_run(in.blocks, in.top, default_max_steps(static_cast<int>(in.blocks.size())),
                          in.order);
    } catch (const BalanceError& e) {
      throw VerificationFailure(e.what());
    }
    std::function<std::string(const std::string&)> name = [](const std::string& s) { return s; };
    print_balance(ctx, *state, in.blocks, name, json::object(), "balanced");
    return kOk;
  }
  const auto& a = ctx.require_alcove();
  const auto blocks = alcove_blocks(*ctx.tables, a.length());
  std::optional<AlcoveBalance> run;
  try {
    run = balance_from_alcove(*ctx.tables, a);
  } catch (const BalanceError& e) {
    throw VerificationFailure(std::string("alcove ") + a.label() + ": " + e.what());
  }
  std::function<std::string(const AlcoveElement&)> name = [&](const AlcoveElement& x) { return ctx.name(x); };
  json extra = {{"alcove", a.word()},
                {"expected", diagram_to_json<AlcoveElement, std::less<AlcoveElement>>(run->expected, name)},
                {"equal", run->equal}};
  std::ostringstream os;
  std::vector<AlcoveElement> mentioned;
  for (const auto& e : run->state.trace) mentioned.push_back(e.label);
  ctx.emit_weights(extra, os, mentioned);
  print_balance(ctx, run->state, blocks, name, extra, run->equal ? "equal" : "unequal");
  std::cout << os.str();
  return run->equal ? kOk : kVerification;
}

int cmd_verify(Context& ctx) {
  const auto report = verify_sweep(*ctx.tables);
  if (ctx.format == Format::Json) {
    json props = json::array();
    for (const auto& p : report.properties) {
      json jp = {{"name", p.name}, {"checked", p.checked}, {"failed", p.failed}};
      if (p.first_counterexample) jp["counterexample"] = *p.first_counterexample;
      props.push_back(jp);
    }
    std::cout << json{{"type", ctx.group.datum().label()}, {"max_len", ctx.max_len},
                      {"properties", props}, {"ok", report.ok()}}.dump(2)
              << "\n";
  } else {
    const char* pre = ctx.format == Format::Latex ? "% " : "";
    std::cout << pre << "verify " << ctx.group.datum().label() << " max_len " << ctx.max_len << "\n";
    for (const auto& p : report.properties) {
      std::cout << pre << std::left << std::setw(30) << p.name << (p.failed ? "FAIL  " : "pass  ")
                << (p.checked - p.failed) << "/" << p.checked << "\n";
      if (p.first_counterexample) std::cout << pre << "  counterexample: " << p.first_counterexample->dump() << "\n";
    }
    std::cout << pre << (report.ok() ? "all properties pass" : "verification FAILED") << "\n";
  }
  return report.ok() ? kOk : kVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kazhdan-Lusztig tables, tilting characters and Loewy-layer balancing for affine Weyl groups"};
  app.fallthrough();
  app.require_subcommand(1);
  JobConfig cfg;
  app.add_option("--type", cfg.type, "Built-in root system: A1, A2, A3, B2, G2 (default A1)");
  app.add_option("--cartan", cfg.cartan_file, "Cartan matrix file (one row per line)");
  app.add_option("--max-len", cfg.max_len, "Length bound for tables (default: alcove length, else 4)");
  app.add_option("--l", cfg.l, "Order of the root of unity; adds weight labels (needs l >= h)");
  app.add_option("--alcove", cfg.alcove, "Alcove as a generator word, e.g. 0102 (\"\" or e for the identity)");
  app.add_option("--parity", cfg.parity, "Module for `kl`: sph or asph (default asph)");
  app.add_option("--format", cfg.format, "Output format: json, ascii, latex (default ascii)");
  app.add_option("--blocks", cfg.blocks_file, "Parity blocks JSON file for `balance`");
  app.add_flag("--outline-blocks", cfg.outline_blocks, "Draw dashed Weyl-block outlines in LaTeX output");

  auto* kl = app.add_subcommand("kl", "Canonical, inverse and tilde polynomials up to --max-len");
  auto* tilt = app.add_subcommand("tilt", "Polynomials t_{B,A} for the tilting module of --alcove");
  auto* weyl = app.add_subcommand("weyl", "Weyl-module composition and tilting Weyl multiplicities");
  auto* layers = app.add_subcommand("layers", "Loewy layers of the tilting module of --alcove");
  auto* partial = app.add_subcommand("partial", "Partial characters along the Weyl filtration");
  partial->add_option("--k", cfg.k, "Number of Weyl factors (1-based prefix length)");
  partial->add_option("--i", cfg.i, "Layer cutoff: sum coefficients of v^j for j <= i");
  partial->add_option("--weighting", cfg.weighting, "factor (default) or tilting");
  auto* balance = app.add_subcommand("balance", "Run the layer-balancing procedure");
  auto* verify = app.add_subcommand("verify", "Invariant sweep up to --max-len");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    Context ctx(cfg);
    if (kl->parsed()) return cmd_kl(ctx);
    if (tilt->parsed()) return cmd_tilt(ctx);
    if (weyl->parsed()) return cmd_weyl(ctx);
    if (layers->parsed()) return cmd_layers(ctx);
    if (partial->parsed()) return cmd_partial(ctx);
    if (balance->parsed()) return cmd_balance(ctx);
    if (verify->parsed()) return cmd_verify(ctx);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const RangeError& e) {
    std::cerr << "range error: " << e.what() << "\n";
    return kRange;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return kVerification;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
