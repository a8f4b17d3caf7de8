// qhh: command-line front end. Parses arguments, loads files and prints
// reports; the computations live in the library.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qhh/io.hpp"
#include "qhh/verify.hpp"

namespace {

using namespace qhh;

enum exit_code { pass = 0, verification_failure = 1, input_error = 2 };

struct Options {
  int N = 3;
  std::optional<std::uint64_t> p;
  std::optional<std::int64_t> q;
  bool auto_field = false;
  int nmax = 6;
  std::string p_index = "all";
  std::uint64_t seed = verify::default_seed;
  std::string format = "table";
  std::string dump;
  std::optional<std::int64_t> ell;
  int count = 10;
  std::string algebra;
  std::string left_module;
  std::string right_module;
  std::string target;  // identity, file or dump kind
};

struct input_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

QContext resolve_context(const Options& o, std::optional<fp::elem> field = std::nullopt) {
  if (o.p && field && *o.p != *field)
    throw input_failure("--p " + std::to_string(*o.p) + " differs from the algebra's field F_" + std::to_string(*field));
  if (o.p && o.q && !o.auto_field) return make_context(o.N, *o.p, *o.q);
  if (o.q && !o.p && !field) throw input_failure("--q needs --p");
  if (field || o.p) {
    const fp::elem p = field ? *field : static_cast<fp::elem>(*o.p);
    if (o.q && !o.auto_field) return make_context(o.N, p, *o.q);
    auto c = verify::h1_context_over(o.N, p);
    if (!c) throw input_failure("no H1 parameter q in F_" + std::to_string(p) + " for N = " + std::to_string(o.N));
    return *c;
  }
  return find_context(o.N);
}

std::optional<int> parse_p_index(const std::string& s) {
  if (s == "all") return std::nullopt;
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw input_failure("");
    return v;
  } catch (const std::exception&) {
    throw input_failure("--p-index takes an integer or \"all\", got " + s);
  }
}

std::shared_ptr<const FinDimAlgebra> load_algebra_or(const Options& o, fp::elem p) {
  if (!o.algebra.empty()) return std::make_shared<const FinDimAlgebra>(io::load_algebra(o.algebra));
  return std::make_shared<const FinDimAlgebra>(dual_numbers(p));
}

/// Modules for the Tor/Ext checks: files when given, otherwise the trivial
/// one-dimensional module of the dual numbers (x acting as 0).
std::pair<FDModule, FDModule> load_modules(const Options& o, const QContext& ctx, Side first_side) {
  auto alg = load_algebra_or(o, ctx.p());
  auto pick = [&](const std::string& file, Side side) {
    if (!file.empty()) {
      auto m = io::load_module(file);
      if (m.side() != side) throw input_failure(file + ": expected a " + to_string(side) + " module");
      if (m.algebra().modulus() != ctx.p()) throw input_failure(file + ": module over a different field");
      return m;
    }
    if (alg->dim() != 2 || !o.algebra.empty())
      throw input_failure("module files are required unless the built-in dual numbers are used");
    return character_module(alg, side, {1, 0});
  };
  return {pick(o.right_module, first_side), pick(o.left_module, Side::left)};
}

void emit(const Options& o, RunReport& r, double seconds) {
  if (o.format == "json") {
    std::cout << to_json(r).dump(2) << '\n';
  } else {
    r.wall_clock_s = seconds;
    print_table(std::cout, r);
  }
}

std::string echo(const std::string& head, const Options& o, bool seeded, bool field) {
  std::string s = head + " --N " + std::to_string(o.N);
  if (field && o.p) s += " --p " + std::to_string(*o.p);
  if (field && o.q) s += " --q " + std::to_string(*o.q);
  if (seeded) s += " --seed " + std::to_string(o.seed);
  return s;
}

RunReport run_theorem1(const Options& o) {
  if (o.algebra.empty()) throw input_failure("theorem1 needs an algebra file");
  const auto a = io::load_algebra(o.algebra);
  const auto ctx = resolve_context(o, a.modulus());
  auto r = verify::theorem1(a, ctx, o.nmax);
  r.command = "theorem1 " + std::filesystem::path(o.algebra).filename().string() + " --N " + std::to_string(o.N) +
              " --nmax " + std::to_string(o.nmax);
  if (!o.dump.empty()) io::write_json_file(o.dump, io::to_json(hochschild_ncomplex(a, ctx, o.nmax)));
  return r;
}

RunReport run_verify(const Options& o) {
  const std::string& id = o.target;
  const fp::elem field = o.p ? static_cast<fp::elem>(*o.p) : 5;
  if (id == "lemma55") return [&] { auto r = verify::lemma55(resolve_context(o)); r.command = echo("verify lemma55", o, false, true); return r; }();
  if (id == "eq56") return [&] { auto r = verify::eq56(resolve_context(o)); r.command = echo("verify eq56", o, false, true); return r; }();
  if (id == "delta-nilpotent") {
    auto r = verify::delta_nilpotent(resolve_context(o), o.seed, o.count, o.ell, o.count);
    r.command = echo("verify delta-nilpotent", o, true, true) + (o.ell ? " --ell " + std::to_string(*o.ell) : "");
    return r;
  }
  if (id == "hexagon" || id == "snake" || id == "kapranov") {
    if (o.N < 3 && id != "kapranov") throw input_failure(id + " needs N >= 3");
    if (!fp::is_prime(field)) throw input_failure("--p must be prime");
    RunReport r = id == "hexagon" ? verify::hexagon(o.N, field, o.seed, o.count)
                  : id == "snake" ? verify::snake(o.N, field, o.seed, o.count)
                                  : verify::kapranov(verify::random_complexes(o.N, field, o.seed, o.count), "random");
    r.command = "verify " + id + " --N " + std::to_string(o.N) + " --p " + std::to_string(field) + " --seed " + std::to_string(o.seed);
    return r;
  }
  if (id == "cor33" || id == "cor46" || id == "tor-symmetry") {
    const auto ctx = resolve_context(o, o.algebra.empty() ? std::nullopt : std::optional<fp::elem>(io::load_algebra(o.algebra).modulus()));
    const auto [m, n] = load_modules(o, ctx, id == "cor46" ? Side::left : Side::right);
    RunReport r = id == "cor33" ? verify::cor33(m, n, ctx, o.nmax)
                  : id == "cor46" ? verify::cor46(m, n, ctx, o.nmax)
                                  : verify::tor_symmetry(m, n, ctx, o.nmax);
    r.command = echo("verify " + id, o, false, true) + " --nmax " + std::to_string(o.nmax);
    return r;
  }
  throw input_failure("unknown identity " + id);
}

RunReport run_homology(const Options& o) {
  const auto c = io::load_ncomplex(o.target);
  auto r = verify::homology(c, parse_p_index(o.p_index));
  r.command = "homology " + std::filesystem::path(o.target).filename().string() + " --p-index " + o.p_index;
  return r;
}

RunReport run_qcalc(const Options& o) {
  const auto ctx = resolve_context(o);
  RunReport r{echo("qcalc", o, false, true), report_context(ctx), {}, {}};
  for (int n = 0; n <= 2 * o.N - 2; ++n)
    r.add("q-integer", "", true, {{"n", n}, {"[n]", ctx.qint(n)}, {"[n]!", ctx.qfactorial(n)}});
  if (ctx.is_h1()) {
    QScalarTable t(ctx);
    for (int a = 0; a < o.N; ++a)
      for (int b = 0; b < o.N; ++b) r.add("q-binomial", "", true, {{"r", a}, {"s", b}, {"value", t.qbinom(a, b)}});
  }
  return r;
}

/// Writes the requested construction and reports its shape.
RunReport run_dump(const Options& o) {
  io::json doc;
  RunReport r{"dump " + o.target + " --N " + std::to_string(o.N) + " --nmax " + std::to_string(o.nmax), std::nullopt, {}, {}};
  if (o.target == "hochschild" || o.target == "bar" || o.target == "simplicial") {
    if (o.algebra.empty()) throw input_failure("dump " + o.target + " needs --algebra");
    const auto a = io::load_algebra(o.algebra);
    if (o.target == "simplicial") {
      doc = io::to_json(hochschild_simplicial(a, o.nmax));
    } else {
      const auto ctx = resolve_context(o, a.modulus());
      r.context = report_context(ctx);
      doc = io::to_json(o.target == "hochschild" ? hochschild_ncomplex(a, ctx, o.nmax)
                                                 : *bar_nresolution(a, ctx, o.nmax).resolution.complex);
    }
  } else if (o.target == "random") {
    const fp::elem field = o.p ? static_cast<fp::elem>(*o.p) : 5;
    doc = io::to_json(verify::random_complexes(o.N, field, o.seed, 1).front());
    r.command += " --seed " + std::to_string(o.seed);
  } else {
    throw input_failure("unknown construction " + o.target + " (hochschild, bar, simplicial, random)");
  }
  if (o.dump.empty()) {
    std::cout << doc.dump(2) << '\n';
    return r;
  }
  io::write_json_file(o.dump, doc);
  r.add("written", o.dump, true, {{"dims", doc.at("dims")}});
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-Hochschild homology of N-complexes over prime fields"};
  app.require_subcommand(1);
  Options o;

  auto add_context = [&](CLI::App* s) {
    s->add_option("--N", o.N, "N of the N-complex")->check(CLI::Range(2, 64));
    s->add_option("--p", o.p, "prime field F_p");
    s->add_option("--q", o.q, "parameter q in F_p");
    s->add_flag("--auto-field", o.auto_field, "choose an H1 parameter automatically");
    s->add_option("--format", o.format, "table or json")->check(CLI::IsMember({"table", "json"}));
  };

  auto* th = app.add_subcommand("theorem1", "compare _pHH_n with classical Hochschild homology");
  th->add_option("algebra", o.algebra, "algebra file")->required();
  add_context(th);
  th->add_option("--nmax", o.nmax, "top Hochschild degree")->check(CLI::Range(1, 30));
  th->add_option("--dump", o.dump, "write the Hochschild N-complex here");

  auto* ve = app.add_subcommand("verify", "run one identity check");
  ve->add_option("identity", o.target, "identity to verify")
      ->required()
      ->check(CLI::IsMember({"lemma55", "eq56", "delta-nilpotent", "hexagon", "snake", "kapranov", "cor33", "cor46", "tor-symmetry"}));
  add_context(ve);
  ve->add_option("--nmax", o.nmax, "top degree")->check(CLI::Range(1, 30));
  ve->add_option("--seed", o.seed, "seed for random instances");
  ve->add_option("--ell", o.ell, "weight of the last face");
  ve->add_option("--count", o.count, "number of random instances")->check(CLI::Range(1, 10000));
  ve->add_option("--algebra", o.algebra, "algebra file");
  ve->add_option("--left-module", o.left_module, "left module file (N)");
  ve->add_option("--right-module", o.right_module, "module file for M");

  auto* ho = app.add_subcommand("homology", "homology table of a stored N-complex");
  ho->add_option("complex", o.target, "complex file")->required();
  ho->add_option("--p-index", o.p_index, "p, or all");
  ho->add_option("--format", o.format, "table or json")->check(CLI::IsMember({"table", "json"}));

  auto* qc = app.add_subcommand("qcalc", "q-integers, factorials and q-binomials");
  add_context(qc);

  auto* du = app.add_subcommand("dump", "export a constructed complex");
  du->add_option("what", o.target, "hochschild, bar, simplicial or random")->required();
  add_context(du);
  du->add_option("--algebra", o.algebra, "algebra file");
  du->add_option("--nmax", o.nmax, "top degree")->check(CLI::Range(1, 30));
  du->add_option("--seed", o.seed, "seed");
  du->add_option("--dump", o.dump, "output path (stdout if absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? pass : input_error;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    RunReport r;
    if (th->parsed()) r = run_theorem1(o);
    else if (ve->parsed()) r = run_verify(o);
    else if (ho->parsed()) r = run_homology(o);
    else if (qc->parsed()) r = run_qcalc(o);
    else {
      r = run_dump(o);
      if (o.dump.empty()) return pass;
    }
    emit(o, r, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    return r.pass() ? pass : verification_failure;
  } catch (const input_failure& e) {
    std::cerr << "qhh: " << e.what() << '\n';
    return input_error;
  } catch (const qhh::error& e) {
    std::cerr << "qhh: " << e.what() << '\n';
    switch (e.code()) {
      case errc::not_exact:
      case errc::relation_failure:
      case errc::division_failure:
      case errc::no_lift:
      case errc::not_a_complex:
        return verification_failure;
      default:
        return input_error;
    }
  } catch (const std::exception& e) {
    std::cerr << "qhh: " << e.what() << '\n';
    return input_error;
  }
}
