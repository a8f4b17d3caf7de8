// Acceptance run: one PASS/FAIL line per criterion with its time budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qhh/derived.hpp"
#include "qhh/dq.hpp"
#include "qhh/verify.hpp"

using namespace qhh;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& what, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = budget_s <= 0 || dt < budget_s;
  const bool ok = o.pass && in_time;
  if (!ok) ++failures;
  std::printf("%s [%2d] %s: %s (%.2f s", ok ? "PASS" : "FAIL", id, what.c_str(), o.detail.c_str(), dt);
  if (budget_s > 0) std::printf(", limit %.0f s%s", budget_s, in_time ? "" : ", over budget");
  std::printf(")\n");
  std::fflush(stdout);
}

std::string count_of(const RunReport& r) {
  std::size_t ok = 0;
  for (const auto& c : r.checks) ok += c.pass;
  return std::to_string(ok) + "/" + std::to_string(r.checks.size()) + " checks";
}

Outcome from_report(const RunReport& r) { return {r.pass() && !r.checks.empty(), count_of(r)}; }

Outcome theorem1_case(const FinDimAlgebra& a, const QContext& ctx, int n_max) {
  const auto rep = theorem1_check(a, ctx, n_max);
  std::size_t ok = 0;
  for (const auto& c : rep.cells) ok += c.pass;
  return {rep.all_pass(), std::to_string(ok) + "/" + std::to_string(rep.cells.size()) + " cells"};
}

}  // namespace

int main() {
  std::vector<NComplex> kapranov_pool;

  criterion(1, "theorem1 F7[x]/(x^2), N=3, q=2, nmax=8", 10,
            [] { return theorem1_case(dual_numbers(7), make_context(3, 7, 2), 8); });

  criterion(2, "theorem1 F3[x]/(x^2), N=3, q=1, nmax=8", 10,
            [] { return theorem1_case(dual_numbers(3), make_context(3, 3, 1), 8); });

  criterion(3, "theorem1 F7[x]/(x^3), N=3, q=2, nmax=5", 60,
            [] { return theorem1_case(truncated_polynomial(7, 3), make_context(3, 7, 2), 5); });

  criterion(4, "D_q identities for N=2..6", 5, [] {
    bool ok = true;
    std::string d;
    for (int N = 2; N <= 6; ++N) {
      const auto ctx = find_context(N);
      const auto [a, b] = verify_lemma55(ctx);
      const bool rest = verify::lemma55(ctx).pass();
      ok = ok && a && b && rest;
      d += "N=" + std::to_string(N) + (a && b && rest ? " ok " : " bad ");
    }
    return Outcome{ok, d};
  });

  criterion(5, "polynomial closed form, all r, N=2..6", 1, [] {
    bool ok = true;
    int cells = 0;
    for (int N = 2; N <= 6; ++N) {
      const auto ctx = find_context(N);
      for (int r = 0; r < N; ++r, ++cells) ok = ok && verify_eq56(ctx, r);
      ok = ok && verify::eq56(ctx).pass();
    }
    return Outcome{ok, std::to_string(cells) + " (N, r) pairs"};
  });

  criterion(6, "delta^N = 0 on 200 random simplicial modules, 50 expansions", 30, [&] {
    RunReport all{"", std::nullopt, {}, {}};
    const int lemma_counts[4] = {13, 13, 12, 12};
    for (int N = 2; N <= 5; ++N) {
      const auto ctx = find_context(N);
      auto r = verify::delta_nilpotent(ctx, verify::default_seed + static_cast<std::uint64_t>(N), 50, std::nullopt,
                                       lemma_counts[N - 2], &kapranov_pool);
      for (auto& c : r.checks) all.checks.push_back(std::move(c));
    }
    return from_report(all);
  });

  criterion(7, "sigma homotopy on the bar complex of dual numbers, N=3, nmax=6", 10, [&] {
    const auto a = dual_numbers(7);
    const auto ctx = make_context(3, 7, 2);
    const auto rep = verify::sigma_contraction(a, ctx, 6);
    kapranov_pool.push_back(*contracting_homotopy_sigma(bar_simplicial(a, 6), ctx).complex);
    return from_report(rep);
  });

  criterion(8, "hexagon and long exact sequence, 50 + 50 instances over F5", 30, [&] {
    RunReport all{"", std::nullopt, {}, {}};
    for (int N = 3; N <= 4; ++N) {
      const auto seed = verify::default_seed + 100 + static_cast<std::uint64_t>(N);
      for (auto& c : verify::hexagon(N, 5, seed, 25).checks) all.checks.push_back(std::move(c));
      for (auto& c : verify::snake(N, 5, seed, 25).checks) all.checks.push_back(std::move(c));
      for (auto& c : verify::random_complexes(N, 5, seed, 25)) kapranov_pool.push_back(std::move(c));
    }
    return from_report(all);
  });

  criterion(9, "phh as Tor over the enveloping algebra, dual numbers, N=3, nmax=5", 10, [] {
    const auto rep = identify_phh_tor(dual_numbers(7), make_context(3, 7, 2), 5);
    return Outcome{rep.ok(), std::to_string(rep.degrees.size()) + " degrees"};
  });

  criterion(10, "relative Tor and Ext reindexing with anchors, dual numbers over F7", 30, [] {
    const auto a = std::make_shared<const FinDimAlgebra>(dual_numbers(7));
    const auto kr = character_module(a, Side::right, Vec{1, 0});
    const auto kl = character_module(a, Side::left, Vec{1, 0});
    const auto ctx = make_context(3, 7, 2);
    RunReport all{"", std::nullopt, {}, {}};
    for (auto& c : verify::cor33(kr, kl, ctx, 6).checks) all.checks.push_back(std::move(c));
    for (auto& c : verify::cor46(kl, kl, ctx, 6).checks) all.checks.push_back(std::move(c));
    return from_report(all);
  });

  criterion(11, "one p acyclic iff every p acyclic, instances of [6]-[8]", 0, [&] {
    const auto rep = verify::kapranov(kapranov_pool, "pool");
    return from_report(rep);
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
