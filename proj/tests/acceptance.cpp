// One line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "muforge/dictionary.hpp"
#include "muforge/properties.hpp"

using namespace muforge;

namespace {

const std::uint64_t kSeed = 20240601;

struct Eis {
    const char* name;
    std::vector<long> c;
};

const std::vector<Eis> kSmall = {{"u^2-3", {-3, 0, 1}}, {"u^3-3", {-3, 0, 0, 1}}, {"u^4+3u^2-3", {-3, 0, 3, 0, 1}}};
const Eis kSextic = {"u^6-3", {-3, 0, 0, 0, 0, 0, 1}};

struct Outcome {
    bool ok = true;
    std::string detail;
    void add(bool pass, const std::string& what)
    {
        ok = ok && pass;
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

std::string summary(const SuiteResult& r)
{
    std::string s = r.name + " " + std::to_string(r.cases) + " cases";
    if (r.passing) s += ", " + std::to_string(r.passing) + " accepted";
    s += ", " + std::to_string(r.failures) + " failures";
    if (r.failures) s += " [" + r.counterexample + "]";
    return s;
}

int failed = 0;

void criterion(int id, const char* name, double limit, const std::function<Outcome()>& body)
{
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& ex) {
        o.add(false, std::string("exception: ") + ex.what());
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = dt < limit;
    if (!in_time) o.add(false, "over time limit");
    bool pass = o.ok;
    failed += !pass;
    std::printf("%s %d %s (%.1fs, limit %.0fs): %s\n", pass ? "PASS" : "FAIL", id, name, dt, limit, o.detail.c_str());
    std::fflush(stdout);
}

std::string report(const DictReport& r)
{
    std::string s = "n=" + std::to_string(r.n) + " BK " + std::to_string(r.side_a_count) + " / SS " +
                    std::to_string(r.side_b_count) + " of " + std::to_string(r.grid_size);
    if (!r.gate.empty()) s += ", gate " + r.gate + ", untested " + std::to_string(r.untested);
    if (!r.mismatches.empty()) s += ", " + std::to_string(r.mismatches.size()) + " mismatches [" + r.mismatches[0] + "]";
    return s;
}

// Counts mutations (id, +1) and (id, -1) for which f reports a mismatch.
std::pair<int, int> sweep(int ids, const std::function<bool(const Mutation&)>& detected)
{
    int hit = 0, total = 0;
    for (int id = 0; id < ids; ++id)
        for (long d : {1L, -1L}) {
            ++total;
            hit += detected(Mutation{id, d});
        }
    return {hit, total};
}

void add_sweep(Outcome& o, const std::string& name, std::pair<int, int> r)
{
    o.add(r.first > 0, name + " " + std::to_string(r.first) + "/" + std::to_string(r.second) + " detected");
}

}  // namespace

int main()
{
    criterion(1, "Witt/ghost exactness", 30, [] {
        Outcome o;
        auto r = witt_suite(kSeed, 10000);
        o.add(r.ok(), summary(r));
        return o;
    });

    criterion(2, "loop suite", 60, [] {
        Outcome o;
        auto r = loop_suite(kSeed, 2000);
        o.add(r.ok(), summary(r));
        return o;
    });

    criterion(3, "lattice/matrix correspondence", 120, [] {
        Outcome o;
        auto r = lattice_suite(kSeed, 500);
        o.add(r.ok(), summary(r));
        return o;
    });

    criterion(4, "three-way mu-classification agreement at n=3", 3 * 300, [] {
        Outcome o;
        for (const auto& E : kSmall) {
            auto t0 = std::chrono::steady_clock::now();
            auto r = classify_suite(3, to_mpz(E.c), 3);
            double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            o.add(r.ok() && dt < 300, std::string(E.name) + ": " + summary(r));
        }
        return o;
    });

    criterion(5, "SS finiteness oracle agreement", 600, [] {
        Outcome o;
        for (const auto& E : kSmall) {
            auto r = kummer_suite_n2(3, to_mpz(E.c));
            o.add(r.ok() && r.passing > 0, std::string(E.name) + ": " + summary(r));
        }
        auto r = kummer_suite_n3(3, to_mpz(kSextic.c));
        o.add(r.ok() && r.passing > 0, std::string(kSextic.name) + ": " + summary(r));
        return o;
    });

    criterion(6, "dictionary", 600, [] {
        Outcome o;
        DictOptions opt;
        opt.oracle = true;
        for (const auto& E : kSmall) {
            auto D = DictContext::make(3, to_mpz(E.c), 2);
            auto r = compare_n2(D, opt);
            o.add(r.matched && r.side_a_count > 0 && check_pi_e_identity(D), std::string(E.name) + ": " + report(r));
            auto ord = check_order_preservation_n2(D);
            o.add(ord.mismatches.empty(), "order " + std::to_string(ord.pairs) + " pairs");
        }
        auto D = DictContext::make(3, to_mpz(kSextic.c), 3);
        auto r = compare_n3(D, opt);
        o.add(r.matched && r.gate == "l1>=p*l3", std::string(kSextic.name) + ": " + report(r));
        o.add(r.condition_c_redundant && r.condition_c_checked > 0,
              "condition C redundant on " + std::to_string(r.condition_c_checked) + " candidates");
        return o;
    });

    criterion(7, "negative controls", 600, [] {
        Outcome o;
        auto e4 = to_mpz(kSmall[2].c), e6 = to_mpz(kSextic.c);
        add_sweep(o, "coro1", sweep(7, [&](const Mutation& m) { return !coro1_control(3, e4, m).ok(); }));
        // With e <= 4 every tame model has zero entries; u^11 - 3 has some with a12 != 0.
        std::vector<long> c11(12, 0);
        c11[0] = -3;
        c11[11] = 1;
        auto e11 = to_mpz(c11);
        add_sweep(o, "tame", sweep(5, [&](const Mutation& m) { return !tame_control(3, e11, m, 1, 1).ok(); }));
        add_sweep(o, "kummer-n2", sweep(2, [&](const Mutation& m) {
                      GridOptions g;
                      g.mut = m;
                      bool hit = false;
                      for (const auto& E : kSmall) hit = hit || !kummer_suite_n2(3, to_mpz(E.c), g).ok();
                      return hit;
                  }));
        add_sweep(o, "kummer-n3", sweep(6, [&](const Mutation& m) {
                      GridOptions g;
                      g.mut = m;
                      return !kummer_suite_n3(3, e6, g).ok();
                  }));
        auto D2 = DictContext::make(3, e4, 2), D3 = DictContext::make(3, e6, 3);
        add_sweep(o, "dictionary-n2 BK", sweep(7, [&](const Mutation& m) {
                      DictOptions d;
                      d.bk = m;
                      return !compare_n2(D2, d).matched;
                  }));
        add_sweep(o, "dictionary-n2 SS", sweep(2, [&](const Mutation& m) {
                      DictOptions d;
                      d.ss = m;
                      return !compare_n2(D2, d).matched;
                  }));
        add_sweep(o, "dictionary-n3 BK", sweep(7, [&](const Mutation& m) {
                      DictOptions d;
                      d.bk = m;
                      return !compare_n3(D3, d).matched;
                  }));
        add_sweep(o, "dictionary-n3 SS", sweep(6, [&](const Mutation& m) {
                      DictOptions d;
                      d.ss = m;
                      return !compare_n3(D3, d).matched;
                  }));
        return o;
    });

    return failed ? 1 : 0;
}
