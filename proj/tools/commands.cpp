#include "commands.hpp"

#include "jettower/degree_poly.hpp"
#include "jettower/estimates.hpp"
#include "jettower/jets.hpp"
#include "jettower/morse.hpp"
#include "jettower/schur_euler.hpp"
#include "jettower/tower.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace jt::cli {

namespace {

using Record = nlohmann::ordered_json;

struct Options {
    int n = 0;
    std::string weight;
    std::string monomial;
    std::string lambda;
    std::string d;
    std::string cache;
    std::string format = "human";
    std::string method = "segre";
    int workers = 1;
    bool leading = false;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (item.empty()) throw UsageError("empty entry in list '" + s + "'");
        out.push_back(item);
    }
    return out;
}

Int parse_int(const std::string& s) {
    Int v;
    if (s.empty() || v.set_str(s, 10) != 0) throw UsageError("not an integer: '" + s + "'");
    return v;
}

Weight parse_weight(const std::string& s, int n) {
    Weight a;
    for (const auto& x : split_list(s)) a.push_back(parse_int(x));
    if (static_cast<int>(a.size()) != n) throw UsageError("--weight needs exactly n entries");
    return a;
}

SchurWeight parse_lambda(const std::string& s, int n) {
    SchurWeight l;
    for (const auto& x : split_list(s)) {
        Int v = parse_int(x);
        if (!v.fits_slong_p()) throw UsageError("--lambda entry out of range");
        l.push_back(v.get_si());
    }
    if (static_cast<int>(l.size()) != n) throw UsageError("--lambda needs exactly n entries");
    return l;
}

std::string weight_string(const Weight& a) {
    std::string s;
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + a[i].get_str();
    return s;
}

std::string rat_string(const Rat& r) { return r.get_str(); }

class Emitter {
public:
    Emitter(std::ostream& out, bool records) : out_(out), records_(records) {}
    bool records() const { return records_; }
    void record(const Record& r) { out_ << r.dump() << "\n"; }
    std::ostream& human() { return out_; }

private:
    std::ostream& out_;
    bool records_;
};

// Tower memo persistence around a computation.
class CacheScope {
public:
    CacheScope(TowerContext& ctx, const std::string& path, std::ostream& err) : ctx_(ctx), path_(path) {
        if (path_.empty() || !std::filesystem::exists(path_)) return;
        std::string why;
        if (!ctx_.load_cache(path_, &why)) err << "warning: ignoring cache " << path_ << ": " << why << "\n";
    }
    ~CacheScope() {
        if (path_.empty()) return;
        try {
            ctx_.save_cache(path_);
        } catch (...) {
        }
    }

private:
    TowerContext& ctx_;
    std::string path_;
};

void require_n(const Options& o, int lo, int hi, const char* what) {
    if (o.n < lo || o.n > hi)
        throw UsageError(std::string(what) + ": --n must be between " + std::to_string(lo) + " and " + std::to_string(hi));
}

int cmd_reduce(const Options& o, Emitter& em, std::ostream& err) {
    require_n(o, 2, 8, "reduce");
    if (o.monomial.empty()) throw UsageError("reduce: --monomial is required");
    Monomial m = parse_monomial(o.monomial);
    TowerContext ctx(o.n);
    CacheScope scope(ctx, o.cache, err);
    DegreePolynomial v = ctx.evaluate_top(Poly::term(m, Int(1)));
    if (em.records())
        em.record({{"command", "reduce"}, {"n", o.n}, {"monomial", m.to_string()}, {"value", v.to_string()}});
    else
        em.human() << v.to_string() << "\n";
    return kOk;
}

MorseResult run_morse(const Options& o, const Weight& a, std::ostream& err) {
    if (o.method == "segre") return morse_polynomials(o.n, a, o.workers);
    TowerContext ctx(o.n);
    CacheScope scope(ctx, o.cache, err);
    return morse_polynomials_expanded(ctx, a, o.workers);
}

Weight weight_for(const Options& o) {
    Weight a = o.weight.empty() ? canonical_weight(o.n) : parse_weight(o.weight, o.n);
    nef_cone_check(a);
    return a;
}

int cmd_morse(const Options& o, Emitter& em, std::ostream& err) {
    require_n(o, 2, 8, "morse");
    Weight a = weight_for(o);
    MorseResult r = run_morse(o, a, err);
    if (em.records()) {
        em.record({{"command", "morse"}, {"n", o.n}, {"weight", weight_string(a)}, {"P", r.P.to_string()},
                   {"Pprime", r.Pprime.to_string()}});
    } else {
        em.human() << "weight = " << weight_string(a) << "\n";
        em.human() << "P  = " << r.P.to_string() << "\n";
        em.human() << "P' = " << r.Pprime.to_string() << "\n";
    }
    return kOk;
}

int cmd_bound(const Options& o, Emitter& em, std::ostream& err) {
    require_n(o, 2, 8, "bound");
    Weight a = weight_for(o);
    MorseResult r = run_morse(o, a, err);
    Int t = degree_threshold(o.n, r);
    if (em.records()) {
        em.record({{"command", "bound"}, {"n", o.n}, {"weight", weight_string(a)}, {"threshold", t.get_str()}});
    } else {
        em.human() << "n=" << o.n << " weight=" << weight_string(a) << "\n";
        em.human() << "threshold=" << t.get_str() << "\n";
    }
    return kOk;
}

int cmd_estimates(const Options& o, Emitter& em) {
    require_n(o, 2, 64, "estimates");
    Ledger l = bound_ledger(o.n);
    if (em.records()) {
        Record r{{"command", "estimates"}};
        for (const auto& [k, v] : l.fields()) r[k] = v;
        em.record(r);
    } else {
        for (const auto& [k, v] : l.fields()) em.human() << k << "=" << v << "\n";
    }
    return kOk;
}

int cmd_certify(const Options& o, Emitter& em) {
    require_n(o, 2, 64, "certify-2n5");
    Ledger l = bound_ledger(o.n);
    bool ok = check_2n5(o.n);
    if (em.records()) {
        em.record({{"command", "certify-2n5"}, {"n", o.n}, {"d2", l.d2.get_str()}, {"certified", ok}});
    } else {
        em.human() << "d2=" << l.d2.get_str() << "\n";
        em.human() << "certified=" << (ok ? "true" : "false") << "\n";
    }
    return ok ? kOk : kVerifyFailed;
}

int cmd_dkmax(const Options& o, Emitter& em) {
    require_n(o, 2, 3, "dkmax");
    std::vector<Int> t = d_k_table(o.n, o.workers);
    Int bound = ipow(Int(o.n), 4ul * o.n * o.n * o.n) * ipow(Int(2), 1ul * o.n * o.n * o.n * o.n);
    bool ok = true;
    for (std::size_t k = 0; k < t.size(); ++k) {
        ok = ok && t[k] <= bound;
        if (em.records())
            em.record({{"command", "dkmax"}, {"n", o.n}, {"k", k}, {"D", t[k].get_str()}});
        else
            em.human() << "D_" << k << "=" << t[k].get_str() << "\n";
    }
    return ok ? kOk : kVerifyFailed;
}

int cmd_chi(const Options& o, Emitter& em) {
    require_n(o, 2, 4, "chi");
    if (o.leading) {
        if (o.n == 4) throw UsageError("chi --leading: n must be 2 or 3");
        QDegreePolynomial v = chi_E_leading(o.n);
        if (em.records())
            em.record({{"command", "chi"}, {"n", o.n}, {"leading", v.to_string()}});
        else
            em.human() << v.to_string() << "\n";
        return kOk;
    }
    if (o.lambda.empty()) throw UsageError("chi: either --leading or --lambda is required");
    SchurWeight l = parse_lambda(o.lambda, o.n);
    QDegreePolynomial exact = chi_exact(o.n, l);
    QDegreePolynomial lead = o.n == 4 ? chi_gamma4_leading(l) : chi_gamma_leading(o.n, l);
    Record r{{"command", "chi"}, {"n", o.n}, {"lambda", o.lambda}};
    std::string ex = exact.to_string(), ld = lead.to_string();
    if (!o.d.empty()) {
        Rat d(parse_int(o.d));
        r["d"] = o.d;
        ex = rat_string(exact.eval(d));
        ld = rat_string(lead.eval(d));
    }
    r["exact"] = ex;
    r["leading"] = ld;
    if (em.records()) {
        em.record(r);
    } else {
        em.human() << "exact=" << ex << "\n";
        em.human() << "leading=" << ld << "\n";
    }
    return kOk;
}

int cmd_h0(const Options& o, Emitter& em) {
    require_n(o, 2, 4, "h0-threshold");
    QDegreePolynomial m = h0_minorant(o.n);
    Int t = h0_threshold(o.n);
    if (em.records()) {
        em.record({{"command", "h0-threshold"}, {"n", o.n}, {"minorant", m.to_string()}, {"threshold", t.get_str()}});
    } else {
        em.human() << "minorant=" << m.to_string() << "\n";
        em.human() << "threshold=" << t.get_str() << "\n";
    }
    return kOk;
}

int cmd_jets_verify(const Options& o, Emitter& em) {
    require_n(o, 2, 4, "jets verify");
    bool ok = true;
    for (const auto& c : verify_jets(o.n)) {
        ok = ok && c.passed;
        if (em.records()) {
            em.record({{"command", "jets verify"}, {"n", o.n}, {"subject", c.subject}, {"check", c.check},
                       {"passed", c.passed}});
        } else {
            em.human() << (c.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(12) << c.subject << c.check
                       << "\n";
        }
    }
    return ok ? kOk : kVerifyFailed;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact intersection numbers on Demailly towers and related invariants", "jettower"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--n", o.n, "dimension");
    app.add_option("--weight", o.weight, "weights a1,...,an");
    app.add_option("--monomial", o.monomial, "monomial such as \"h u1^2 u2\"");
    app.add_option("--lambda", o.lambda, "Schur weight l1,...,ln");
    app.add_option("--d", o.d, "hypersurface degree");
    app.add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--cache", o.cache, "reduction memo file");
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"human", "records"}));

    auto* reduce = app.add_subcommand("reduce", "reduce a top-degree monomial to a polynomial in d");
    auto* morse = app.add_subcommand("morse", "print P and P'");
    auto* bound = app.add_subcommand("bound", "certified degree threshold");
    for (auto* s : {morse, bound})
        s->add_option("--method", o.method, "segre or expanded")->check(CLI::IsMember({"segre", "expanded"}));
    auto* estimates = app.add_subcommand("estimates", "print the bound ledger");
    auto* certify = app.add_subcommand("certify-2n5", "check d2 <= 2^(n^5)");
    auto* dkmax = app.add_subcommand("dkmax", "exact D_k table");
    auto* chi = app.add_subcommand("chi", "Euler characteristics of Schur bundles");
    chi->add_flag("--leading", o.leading, "leading m-power coefficient");
    auto* h0 = app.add_subcommand("h0-threshold", "degree threshold from the h0 minorant");
    auto* jets = app.add_subcommand("jets", "jet invariants");
    jets->require_subcommand(1);
    jets->fallthrough();
    auto* verify = jets->add_subcommand("verify", "verification table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    Emitter em(out, o.format == "records");
    try {
        if (*reduce) return cmd_reduce(o, em, err);
        if (*morse) return cmd_morse(o, em, err);
        if (*bound) return cmd_bound(o, em, err);
        if (*estimates) return cmd_estimates(o, em);
        if (*certify) return cmd_certify(o, em);
        if (*dkmax) return cmd_dkmax(o, em);
        if (*chi) return cmd_chi(o, em);
        if (*h0) return cmd_h0(o, em);
        if (*verify) return cmd_jets_verify(o, em);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kVerifyFailed;
    }
    return kUsage;
}

}  // namespace jt::cli
