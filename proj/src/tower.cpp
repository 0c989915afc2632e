#include "jettower/tower.hpp"

#include <fstream>
#include <sstream>

namespace jt {

Int binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Int lambda_coeff(int n, int j, int k) {
    if (j < 1 || j > n || k < 0 || k > j) throw std::out_of_range("lambda_coeff: index out of range");
    return binomial(n - k, j - k) - binomial(n - k, j - k - 1);
}

DegreePolynomial hypersurface_chern(int n, int j, Policy policy) {
    // c_j = (-1)^j h^j sum_i (-1)^i C(n+2, i) d^{j-i}
    std::vector<Int> c(j + 1);
    for (int i = 0; i <= j; ++i) {
        Int v = binomial(n + 2, i);
        if (policy == Policy::Exact && ((i + j) % 2)) v = -v;
        c[j - i] = v;
    }
    return DegreePolynomial(c);
}

Monomial tower_monomial(int l, const std::vector<int>& u, int c1_power) {
    std::vector<Monomial::Entry> e;
    if (l) e.push_back({var_h(), static_cast<std::uint32_t>(l)});
    if (c1_power) e.push_back({var_c(1), static_cast<std::uint32_t>(c1_power)});
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i]) e.push_back({var_u(static_cast<int>(i) + 1), static_cast<std::uint32_t>(u[i])});
    return Monomial(std::move(e));
}

TowerContext::TowerContext(int n, Policy policy) : n_(n), policy_(policy) {
    if (n < 1 || n > 62) throw std::invalid_argument("TowerContext: unsupported dimension");
    gamma_.push_back(DegreePolynomial({Int(1)}));
    for (int j = 1; j <= n; ++j) gamma_.push_back(hypersurface_chern(n, j, policy));
}

Int TowerContext::lambda(int j, int k) const {
    if (policy_ == Policy::Upper) return Int(1) << n_;
    return lambda_coeff(n_, j, k);
}

bool TowerContext::killed(const Monomial& m) const {
    long cum = 0;
    int level = 0;
    for (const auto& [v, e] : m.entries()) {
        if (v == var_h()) {
            cum += e;
        } else if (is_c(v)) {
            if (c_index(v) > n_) return true;
            cum += static_cast<long>(c_index(v)) * e;
        } else if (is_u(v)) {
            if (level == 0 && cum > n_) return true;
            level = u_level(v);
            cum += e;
            if (cum > dim(level)) return true;
        } else {
            throw std::invalid_argument("unexpected variable in tower class: " + var_name(v));
        }
    }
    return level == 0 ? cum > n_ : cum > dim(level);
}

Poly TowerContext::mul(const Poly& a, const Poly& b) const {
    return a.mul_filtered(b, [this](const Monomial& m) { return !killed(m); });
}

int TowerContext::level_of(const Poly& cls) {
    int lv = 0;
    for (const auto& t : cls.terms())
        for (const auto& [v, e] : t.first.entries())
            if (is_u(v)) lv = std::max(lv, u_level(v));
    return lv;
}

const Poly& TowerContext::chern_level(int j, int level) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto key = std::make_pair(j, level);
    auto it = chern_.find(key);
    if (it != chern_.end()) return it->second;
    Poly v;
    if (j == 0)
        v = Poly(1);
    else if (j < 0 || j > n_)
        v = Poly();
    else if (level == 0)
        v = Poly::var(var_c(j));
    else {
        for (int k = 0; k <= j; ++k) {
            Poly lower = chern_level(k, level - 1);
            Poly upow = Poly::var(var_u(level), static_cast<std::uint32_t>(j - k));
            v += (lower * upow).scaled(lambda(j, k));
        }
    }
    return chern_.emplace(key, std::move(v)).first->second;
}

const std::vector<Poly>& TowerContext::power_normal_form(int level, int p) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto key = std::make_pair(level, p);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::vector<Poly> nf(n_);
    if (p < n_) {
        nf[p] = Poly(1);
    } else {
        std::vector<Poly> prev = power_normal_form(level, p - 1);
        for (int r = n_ - 1; r >= 1; --r) nf[r] = prev[r - 1];
        const Poly& top = prev[n_ - 1];
        if (!top.is_zero()) {
            Int sign = policy_ == Policy::Upper ? 1 : -1;
            for (int j = 1; j <= n_; ++j) {
                Poly contrib = mul(top, chern_level(j, level - 1));
                nf[n_ - j] += contrib.scaled(sign);
            }
        }
    }
    return memo_.emplace(key, std::move(nf)).first->second;
}

Poly TowerContext::pushforward(const Poly& cls, int level) {
    long deg = 0;
    if (!cls.is_homogeneous(Grading::standard(), &deg) || (deg != dim(level) && deg != -1))
        throw std::invalid_argument("pushforward: class is not homogeneous of degree dim X_" + std::to_string(level));
    return pushforward_any(cls, level);
}

Poly TowerContext::pushforward_any(const Poly& cls, int level) {
    if (level < 1 || level > n_) throw std::invalid_argument("pushforward: bad level");
    if (level_of(cls) > level) throw std::invalid_argument("pushforward: class lives above the given level");
    VarId u = var_u(level);
    std::map<int, Poly::Map> groups;
    for (const auto& [m, c] : cls.terms()) {
        int p = static_cast<int>(m.exponent(u));
        if (p < n_ - 1) continue;
        auto& g = groups[p];
        Monomial rest = m.without(u);
        auto it = g.find(rest);
        if (it == g.end())
            g.emplace(std::move(rest), c);
        else
            it->second += c;
    }
    Poly out;
    for (auto& [p, g] : groups) {
        Poly omega = Poly::from_map(std::move(g));
        if (p == n_ - 1)
            out += omega;
        else
            out += mul(omega, power_normal_form(level, p)[n_ - 1]);
    }
    return out;
}

DegreePolynomial TowerContext::evaluate_base(const Poly& cls) const {
    DegreePolynomial total;
    for (const auto& [m, c] : cls.terms()) {
        long w = 0;
        DegreePolynomial v({c});
        for (const auto& [var, e] : m.entries()) {
            if (var == var_h()) {
                w += e;
            } else if (is_c(var) && c_index(var) <= n_) {
                w += static_cast<long>(c_index(var)) * e;
                for (std::uint32_t i = 0; i < e; ++i) v = v * gamma_[c_index(var)];
            } else {
                throw std::invalid_argument("evaluate_base: not a base class: " + cls.to_string());
            }
        }
        if (w != n_) throw std::invalid_argument("evaluate_base: class is not of weighted degree n");
        total += v * DegreePolynomial({Int(0), Int(1)});
    }
    return total;
}

DegreePolynomial TowerContext::integrate(const Poly& cls, int level) {
    long deg = 0;
    if (!cls.is_homogeneous(Grading::standard(), &deg) || (deg != dim(level) && deg != -1))
        throw std::invalid_argument("integrate: class is not homogeneous of degree dim X_" + std::to_string(level));
    if (level_of(cls) > level) throw std::invalid_argument("integrate: class lives above the given level");
    Poly cur = cls.filtered([this](const Monomial& m) { return !killed(m); });
    for (int l = level; l >= 1; --l) cur = pushforward_any(cur, l);
    return evaluate_base(cur);
}

std::size_t TowerContext::memo_size() const {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    return memo_.size();
}

namespace {
constexpr const char* kCacheMagic = "jettower-memo";
constexpr int kCacheVersion = 1;
}  // namespace

void TowerContext::save_cache(const std::string& path) const {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write cache: " + path);
    out << kCacheMagic << " " << kCacheVersion << " n=" << n_ << " policy=" << (policy_ == Policy::Exact ? "exact" : "upper")
        << " entries=" << memo_.size() << "\n";
    for (const auto& [key, nf] : memo_)
        for (int r = 0; r < n_; ++r) out << key.first << " " << key.second << " " << r << " " << nf[r].to_string() << "\n";
    out << "end\n";
}

bool TowerContext::load_cache(const std::string& path, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    std::ifstream in(path);
    if (!in) return fail("cannot open " + path);
    std::string magic, ns, ps, es;
    int version = 0;
    if (!(in >> magic >> version >> ns >> ps >> es)) return fail("truncated header");
    if (magic != kCacheMagic) return fail("not a memo file");
    if (version != kCacheVersion) return fail("version mismatch");
    if (ns != "n=" + std::to_string(n_)) return fail("dimension mismatch");
    if (ps != std::string("policy=") + (policy_ == Policy::Exact ? "exact" : "upper")) return fail("policy mismatch");
    std::size_t entries = 0;
    try {
        entries = std::stoul(es.substr(es.find('=') + 1));
    } catch (...) {
        return fail("bad entry count");
    }
    std::map<std::pair<int, int>, std::vector<Poly>> loaded;
    std::string line;
    std::getline(in, line);
    bool ended = false;
    try {
        while (std::getline(in, line)) {
            if (line == "end") {
                ended = true;
                break;
            }
            std::istringstream ls(line);
            int l = 0, p = 0, r = 0;
            if (!(ls >> l >> p >> r)) return fail("bad record");
            std::string rest;
            std::getline(ls, rest);
            if (l < 1 || l > n_ || p < 0 || r < 0 || r >= n_) return fail("record out of range");
            auto& nf = loaded[{l, p}];
            nf.resize(n_);
            nf[r] = parse_poly(rest);
        }
    } catch (const std::exception& e) {
        return fail(std::string("unparsable record: ") + e.what());
    }
    if (!ended) return fail("missing end marker");
    if (loaded.size() != entries) return fail("entry count mismatch");
    std::lock_guard<std::recursive_mutex> lock(mu_);
    for (auto& kv : loaded) memo_.insert(std::move(kv));
    return true;
}

}  // namespace jt
