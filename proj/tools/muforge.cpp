#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "muforge/classify.hpp"
#include "muforge/dictionary.hpp"
#include "muforge/kummer.hpp"
#include "muforge/lattice.hpp"
#include "muforge/properties.hpp"
#include "muforge/series.hpp"

using json = nlohmann::ordered_json;
using namespace muforge;

namespace {

// Bad input: exit status 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    unsigned long p = 3;
    unsigned q = 3;
    unsigned n = 2;
    std::vector<mpz_class> E;
    long pi_precision = 0;
    std::size_t witt_length = 0;
    long u_degree = 0;
    long exp_degree = 0;
    unsigned jobs = 1;
    bool has_E = false;

    long e() const { return (long)E.size() - 1; }
};

json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& ex) {
        throw InputError(path + ": " + ex.what());
    }
}

void merge_config(Config& c, const json& j)
{
    try {
        if (j.contains("p")) c.p = j.at("p").get<unsigned long>();
        c.q = j.contains("q") ? j.at("q").get<unsigned>() : (unsigned)c.p;
        if (j.contains("n")) c.n = j.at("n").get<unsigned>();
        for (const char* key : {"E", "E_coeffs"})
            if (j.contains(key)) {
                c.E.clear();
                for (const auto& x : j.at(key)) {
                    if (x.is_string()) c.E.emplace_back(x.get<std::string>());
                    else c.E.emplace_back(x.get<long>());
                }
                c.has_E = true;
            }
        if (j.contains("e") && c.has_E && j.at("e").get<long>() != c.e())
            throw InputError("e does not match the degree of E");
        if (j.contains("precision")) {
            const auto& pr = j.at("precision");
            if (pr.contains("pi_precision")) c.pi_precision = pr.at("pi_precision").get<long>();
            if (pr.contains("witt_length")) c.witt_length = pr.at("witt_length").get<std::size_t>();
            if (pr.contains("u_degree")) c.u_degree = pr.at("u_degree").get<long>();
            if (pr.contains("exp_degree")) c.exp_degree = pr.at("exp_degree").get<long>();
        }
        if (j.contains("jobs")) c.jobs = j.at("jobs").get<unsigned>();
    } catch (const json::exception& ex) {
        throw InputError(std::string("config: ") + ex.what());
    }
}

void validate(const Config& c)
{
    if (c.p < 3) throw InputError("p must be an odd prime");
    for (unsigned long d = 2; d * d <= c.p; ++d)
        if (c.p % d == 0) throw InputError("p must be prime");
    if (!c.has_E) throw InputError("config: missing E");
    try {
        validate_eisenstein(c.p, c.E);
    } catch (const std::invalid_argument& ex) {
        throw InputError(ex.what());
    }
    unsigned m = 0;
    for (unsigned long x = 1; x < c.q; x *= c.p) ++m;
    unsigned long qq = 1;
    for (unsigned i = 0; i < m; ++i) qq *= c.p;
    if (qq != c.q || m == 0) throw InputError("q must be a power of p");
    if (c.n < 1) throw InputError("n must be positive");
}

const Fq& field(const Config& c)
{
    unsigned m = 0;
    for (unsigned long x = 1; x < c.q; x *= c.p) ++m;
    return Fq::get((unsigned)c.p, m);
}

// JSON shapes.

json to_json(const LaurentPoly& a) { return {{"min_degree", a.min_degree()}, {"coeffs", a.coeffs()}}; }

std::string key(unsigned i, unsigned j) { return std::to_string(i + 1) + "," + std::to_string(j + 1); }

json to_json(const GMatrix& A)
{
    json a = json::object();
    for (unsigned i = 0; i < A.n; ++i)
        for (unsigned j = i + 1; j < A.n; ++j) a[key(i, j)] = to_json(A.a[i][j]);
    return {{"n", A.n}, {"l", A.l}, {"a", a}};
}

// Digits up to the last nonzero one.
json to_json(const OKElem& x)
{
    auto d = x.digits();
    while (!d.empty() && d.back() == 0) d.pop_back();
    return {{"digits", d}, {"precision", x.precision()}};
}

json to_json(const OKPoly& f)
{
    json terms = json::array();
    for (const auto& [m, c] : f.t) terms.push_back({{"exponents", m}, {"coeff", to_json(c)}});
    return {{"precision", f.prec}, {"terms", terms}};
}

LaurentPoly poly_from_json(const Fq& F, const json& j)
{
    std::vector<fq_t> c;
    for (const auto& x : j.at("coeffs")) {
        long v = x.get<long>();
        if (v < 0 || v >= (long)F.q()) throw InputError("coefficient out of range");
        c.push_back((fq_t)v);
    }
    return LaurentPoly(F, j.value("min_degree", 0L), c);
}

std::pair<unsigned, unsigned> parse_key(const std::string& k, unsigned n)
{
    unsigned i = 0, j = 0;
    char comma = 0;
    std::istringstream is(k);
    if (!(is >> i >> comma >> j) || comma != ',' || i < 1 || j <= i || j > n)
        throw InputError("bad entry index \"" + k + "\"");
    return {i - 1, j - 1};
}

std::vector<long> l_from_json(const json& j, unsigned n)
{
    auto l = j.at("l").get<std::vector<long>>();
    if (l.size() != n) throw InputError("l must have n entries");
    return l;
}

GMatrix gmatrix_from_json(const Fq& F, const json& j)
{
    unsigned n = j.at("n").get<unsigned>();
    GMatrix A(F, l_from_json(j, n));
    if (j.contains("a"))
        for (const auto& [k, v] : j.at("a").items()) {
            auto [r, c] = parse_key(k, n);
            A.a[r][c] = poly_from_json(F, v);
        }
    return A;
}

OKElem okelem_from_json(const OKContext& C, const json& j)
{
    if (j.is_number_integer()) return C.from_int(j.get<long>());
    auto d = j.at("digits").get<std::vector<unsigned>>();
    long prec = j.value("precision", C.N());
    for (unsigned x : d)
        if (x >= C.p()) throw InputError("digit out of range");
    if (prec > C.N()) prec = C.N();
    d.resize(C.N(), 0);
    return C.from_digits(d, prec);
}

// Matrix type l read ahead of the entries, to size the context.
std::vector<long> ss_type(const json& j)
{
    unsigned n = j.at("n").get<unsigned>();
    return l_from_json(j, n);
}

SSMatrix ssmatrix_from_json(const OKContext& C, const json& j, std::size_t len)
{
    unsigned n = j.at("n").get<unsigned>();
    SSMatrix A(C, l_from_json(j, n), len);
    if (j.contains("entries"))
        for (const auto& [k, v] : j.at("entries").items()) {
            auto [r, c] = parse_key(k, n);
            std::vector<OKElem> comp;
            if (v.is_array())
                for (const auto& x : v) comp.push_back(okelem_from_json(C, x));
            else
                comp.push_back(okelem_from_json(C, v));
            if (comp.size() > len) throw InputError("entry " + k + " longer than the Witt length");
            comp.resize(len, C.zero());
            A.a[r][c] = OKWitt(comp);
        }
    return A;
}

json ssmatrix_to_json(const SSMatrix& A)
{
    json ent = json::object();
    for (unsigned i = 0; i < A.n(); ++i)
        for (unsigned j = i + 1; j < A.n(); ++j) {
            json c = json::array();
            for (std::size_t k = 0; k < A.a[i][j].size(); ++k) c.push_back(to_json(A.a[i][j][k]));
            ent[key(i, j)] = c;
        }
    return {{"n", A.n()}, {"l", A.l}, {"entries", ent}};
}

bool teichmuller_entries(const SSMatrix& A)
{
    for (unsigned i = 0; i < A.n(); ++i)
        for (unsigned j = i + 1; j < A.n(); ++j)
            for (std::size_t k = 1; k < A.a[i][j].size(); ++k)
                if (!A.a[i][j][k].is_known_zero()) return false;
    return true;
}

json report_json(const DictReport& r)
{
    json j = {{"n", r.n},
              {"side_a_count", r.side_a_count},
              {"side_b_count", r.side_b_count},
              {"matched", r.matched},
              {"mismatches", r.mismatches},
              {"gate", r.gate.empty() ? json(nullptr) : json(r.gate)},
              {"grid_size", r.grid_size},
              {"untested", r.untested}};
    if (r.n == 3) {
        j["condition_c_checked"] = r.condition_c_checked;
        j["condition_c_redundant"] = r.condition_c_redundant;
    }
    return j;
}

json suite_json(const SuiteResult& r)
{
    return {{"suite", r.name}, {"cases", r.cases}, {"failures", r.failures}, {"counterexample", r.counterexample}};
}

struct Options {
    std::string config;
    bool oracle = false;
    unsigned jobs = 0;
    std::uint64_t seed = 1;
    long iterations = 0;
    std::string out;
    std::string file;
};

Config load_config(const Options& o, const json* inline_cfg = nullptr)
{
    Config c;
    if (!o.config.empty()) merge_config(c, read_json(o.config));
    if (inline_cfg) merge_config(c, *inline_cfg);
    if (o.jobs) c.jobs = o.jobs;
    validate(c);
    return c;
}

// Input file holding a matrix and optionally config keys.
std::pair<Config, json> load_input(const Options& o, const char* matrix_key)
{
    json j = read_json(o.file);
    Config c = load_config(o, &j);
    json m = j.contains(matrix_key) ? j.at(matrix_key) : j;
    return {c, m};
}

int cmd_enumerate(const Options& o, std::ostream& out)
{
    Config c = load_config(o);
    const Fq& F = field(c);
    auto E = EisensteinDigits::from_coeffs(F, c.E, std::max(3u, c.n));
    long count = 0;
    enumerate_mu(F, c.n, E, c.jobs, [&](const GMatrix& A) {
        out << to_json(A).dump() << "\n";
        ++count;
    });
    json summary = {{"count", count}};
    int rc = 0;
    if (o.oracle) {
        // Brute force over the full grid [0, lmax + 1]^n with the lattice oracle.
        long lmax = c.e() / (long)(c.p - 1) + 1, oracle = 0;
        std::vector<long> l(c.n, 0);
        for (;;) {
            for_each_candidate(F, l, [&](const GMatrix& A) {
                auto L = lattice_from_matrix(A);
                oracle += distinguished_matrix(L) == A && is_mu_lattice(L, E);
            });
            unsigned i = c.n;
            while (i > 0 && l[i - 1] == lmax) l[--i] = 0;
            if (i == 0) break;
            ++l[i - 1];
        }
        summary["oracle_count"] = oracle;
        summary["oracle_agrees"] = oracle == count;
        rc = oracle == count ? 0 : 1;
    }
    std::cerr << summary.dump() << "\n";
    return rc;
}

int cmd_check_mu(const Options& o, std::ostream& out)
{
    auto [c, m] = load_input(o, "matrix");
    const Fq& F = field(c);
    GMatrix A = gmatrix_from_json(F, m);
    auto E = EisensteinDigits::from_coeffs(F, c.E, std::max(3u, A.n));
    auto mc = mu_conditions(A, E);
    json r = {{"degrees", mc.degrees}, {"t_matrix", mc.t_matrix}, {"phi", mc.phi}, {"eisenstein", mc.eisenstein},
              {"mu", mc.all()}};
    bool ok = mc.all();
    if (A.n == 3) {
        auto P = MuParams3::from_matrix(A);
        auto k = check_coro1(P, E, c.e());
        r["congruences"] = {{"order", k.order}, {"degrees", k.degrees}, {"ii_a", k.ii_a}, {"ii_b", k.ii_b},
                            {"ii_c", k.ii_c},   {"iii", k.iii},         {"iv_a", k.iv_a}, {"iv_b", k.iv_b},
                            {"v", k.v},         {"all", k.all()}};
        if (c.e() % (long)c.p != 0) {
            auto t = check_tame(P, E, c.e());
            r["tame"] = {{"order", t.order},       {"degrees", t.degrees},   {"ii_a", t.ii_a},
                         {"ii_b", t.ii_b},         {"iii", t.iii},           {"member_a", t.member_a},
                         {"member_b", t.member_b}, {"all", t.all()}};
        }
    }
    if (o.oracle) {
        bool lat = false;
        bool nonneg = true;
        for (long x : A.l) nonneg = nonneg && x >= 0;
        if (nonneg) {
            auto L = lattice_from_matrix(A);
            lat = distinguished_matrix(L) == A && is_mu_lattice(L, E);
        }
        r["oracle"] = {{"mu_lattice", lat}, {"agrees", lat == mc.all()}};
        if (lat != mc.all()) ok = false;
    }
    out << r.dump(2) << "\n";
    return ok ? 0 : 1;
}

// Context sized for the matrix type unless the config overrides the precision.
std::shared_ptr<const OKContext> ok_context(const Config& c, const std::vector<long>& l)
{
    long N = c.pi_precision > 0 ? c.pi_precision : default_pi_precision(c.p, c.e(), l);
    return OKContext::make(c.p, c.E, N);
}

int cmd_check_kummer(const Options& o, std::ostream& out)
{
    auto [c, m] = load_input(o, "matrix");
    if (c.q != c.p) throw InputError("check-kummer requires q = p");
    auto l = ss_type(m);
    auto C = ok_context(c, l);
    std::size_t len = c.witt_length ? c.witt_length : default_witt_length((unsigned)l.size());
    SSMatrix A = ssmatrix_from_json(*C, m, len);
    json r = json::object();
    bool ok = true;
    r["matrix"] = ssmatrix_to_json(A);
    r["in_Mn"] = in_Mn(A);
    ok = ok && r["in_Mn"].get<bool>();
    if (A.n() == 2 || A.n() == 3) {
        if (!teichmuller_entries(A)) throw InputError("the Kummer congruences need Teichmueller entries");
        if (A.n() == 2) {
            auto k = check_kummer_n2(l[0], l[1], A.a[0][1][0]);
            r["congruences"] = {{"order", k.order}, {"ii", k.ii}, {"iii", k.iii}, {"all", k.all()}};
            ok = k.all();
        } else {
            try {
                auto k = check_kummer_n3(l[0], l[1], l[2], A.a[0][1][0], A.a[0][2][0], A.a[1][2][0]);
                r["congruences"] = {{"order", k.order}, {"m12", k.m12}, {"m23", k.m23}, {"m13", k.m13},
                                    {"f12", k.f12},     {"f23", k.f23}, {"f13", k.f13}, {"all", k.all()}};
                ok = k.all();
            } catch (const OutOfScope& ex) {
                r["out_of_scope"] = ex.what();
                ok = false;
            }
        }
        if (ok) {
            auto iso = check_isogeny_pair(A, frobenius(A));
            r["isogeny_pair"] = {{"ok", iso.ok}, {"failure", iso.failure}};
        }
        if (o.oracle) {
            bool v = verify_integrality(A);
            bool claimed = r.contains("congruences") && r["congruences"]["all"].get<bool>();
            r["oracle"] = {{"integral", v}, {"agrees", v == claimed}};
            if (v != claimed) ok = false;
        }
    }
    out << r.dump(2) << "\n";
    return ok ? 0 : 1;
}

int cmd_emit_hopf(const Options& o, std::ostream& out)
{
    auto [c, m] = load_input(o, "matrix");
    if (c.q != c.p) throw InputError("emit-hopf requires q = p");
    auto l = ss_type(m);
    if (l.size() > 3) throw InputError("emit-hopf handles n <= 3");
    auto C = ok_context(c, l);
    std::size_t len = c.witt_length ? c.witt_length : default_witt_length((unsigned)l.size());
    SSMatrix A = ssmatrix_from_json(*C, m, len);
    HopfPresentation H = emit_hopf(A);
    out << H.to_string();
    json j = {{"l", H.l}, {"integral", H.integral}, {"failure", H.failure}};
    j["D"] = json::array();
    for (const auto& d : H.D) j["D"].push_back(to_json(d));
    j["equations"] = json::array();
    for (const auto& e : H.equations) j["equations"].push_back(to_json(e));
    out << j.dump() << "\n";
    return H.integral ? 0 : 1;
}

int cmd_compare(const Options& o, std::ostream& out)
{
    Config c = load_config(o);
    if (c.q != c.p) throw InputError("compare requires q = p");
    if (c.n != 2 && c.n != 3) throw InputError("compare needs n = 2 or n = 3");
    auto D = DictContext::make(c.p, c.E, c.n, c.pi_precision, c.witt_length);
    DictOptions opt;
    opt.jobs = c.jobs;
    opt.oracle = o.oracle;
    DictReport r = c.n == 2 ? compare_n2(D, opt) : compare_n3(D, opt);
    json j = report_json(r);
    j["pi_e_identity"] = check_pi_e_identity(D);
    if (c.n == 2) {
        auto ord = check_order_preservation_n2(D);
        j["order_pairs"] = ord.pairs;
        j["order_mismatches"] = ord.mismatches;
        if (!ord.mismatches.empty()) r.matched = false;
    }
    out << j.dump(2) << "\n";
    return r.matched && j["pi_e_identity"].get<bool>() ? 0 : 1;
}

int cmd_loop_props(const Options& o, std::ostream& out)
{
    long it = o.iterations > 0 ? o.iterations : 2000;
    std::vector<SuiteResult> rs = {witt_suite(o.seed, it), loop_suite(o.seed, it), lattice_suite(o.seed, it / 4 + 1)};
    bool ok = true;
    for (const auto& r : rs) {
        json j = suite_json(r);
        j["seed"] = o.seed;
        out << j.dump() << "\n";
        if (!r.ok()) {
            ok = false;
            std::cerr << r.name << " counterexample: " << r.counterexample << "\n";
        }
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Finite flat models of mu_{p^n}: Breuil-Kisin and Sekiguchi-Suwa classifications"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* s) {
        s->add_option("--config", o.config, "JSON config file");
        s->add_flag("--oracle", o.oracle, "re-derive verdicts with the brute-force oracles");
        s->add_option("--jobs", o.jobs, "worker threads");
        s->add_option("--seed", o.seed, "random seed");
        s->add_option("--out", o.out, "write output to this file");
    };
    auto* en = app.add_subcommand("enumerate-bk", "stream mu-matrices as JSON lines");
    auto* cm = app.add_subcommand("check-mu", "mu-matrix conditions for a matrix");
    auto* ck = app.add_subcommand("check-kummer", "Kummer congruences for an SS matrix");
    auto* eh = app.add_subcommand("emit-hopf", "Hopf algebra presentation for an SS matrix");
    auto* cp = app.add_subcommand("compare", "compare both classifications");
    auto* lp = app.add_subcommand("loop-props", "randomized property suites");
    for (auto* s : {en, cm, ck, eh, cp, lp}) common(s);
    for (auto* s : {cm, ck, eh}) s->add_option("file", o.file, "input JSON")->required();
    lp->add_option("--iterations", o.iterations, "iterations per suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    std::ofstream file;
    if (!o.out.empty()) {
        file.open(o.out);
        if (!file) {
            std::cerr << "cannot write " << o.out << "\n";
            return 2;
        }
    }
    std::ostream& out = o.out.empty() ? std::cout : file;
    try {
        if (*en) return cmd_enumerate(o, out);
        if (*cm) return cmd_check_mu(o, out);
        if (*ck) return cmd_check_kummer(o, out);
        if (*eh) return cmd_emit_hopf(o, out);
        if (*cp) return cmd_compare(o, out);
        if (*lp) return cmd_loop_props(o, out);
    } catch (const InputError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const json::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
