#include "jettower/poly.hpp"

#include <cctype>
#include <charconv>

namespace jt {

namespace {

int parse_int(std::string_view s, std::string_view whole) {
    int v = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || r.ec != std::errc() || r.ptr != s.data() + s.size())
        throw std::invalid_argument("bad variable name: " + std::string(whole));
    return v;
}

}  // namespace

VarId var_id(std::string_view name) {
    if (name == "h") return var_h();
    if (name == "d") return var_d();
    if (name == "t") return var_t();
    if (name.size() >= 2 && name[0] == 'c') {
        int k = parse_int(name.substr(1), name);
        if (k >= 1 && k <= 63) return var_c(k);
    }
    if (name.size() >= 2 && name[0] == 'u') {
        int l = parse_int(name.substr(1), name);
        if (l >= 1 && l <= 63) return var_u(l);
    }
    if (name.size() >= 2 && name[0] == 'a') {
        int j = parse_int(name.substr(1), name);
        if (j >= 1 && j <= 255) return var_a(j);
    }
    if (name.size() >= 4 && (name[0] == 'f' || name[0] == 'v')) {
        auto us = name.find('_');
        if (us != std::string_view::npos) {
            int i = parse_int(name.substr(1, us - 1), name);
            int k = parse_int(name.substr(us + 1), name);
            if (i >= 1 && i <= 15 && k >= 1 && k <= 15) return name[0] == 'f' ? var_f(i, k) : var_v(i, k);
        }
    }
    throw std::invalid_argument("unknown variable: " + std::string(name));
}

std::string var_name(VarId id) {
    if (id == 0) return "h";
    if (id == 200) return "d";
    if (id == 2000) return "t";
    if (id >= 1 && id <= 63) return "c" + std::to_string(id);
    if (id >= 65 && id <= 127) return "u" + std::to_string(id - 64);
    if (id >= 256 && id < 512) return "f" + std::to_string((id - 256) / 16) + "_" + std::to_string((id - 256) % 16);
    if (id >= 1025 && id < 1280) return "a" + std::to_string(id - 1024);
    if (id >= 1280 && id < 1536) return "v" + std::to_string((id - 1280) / 16) + "_" + std::to_string((id - 1280) % 16);
    throw std::invalid_argument("unknown variable id " + std::to_string(id));
}

Monomial::Monomial(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end());
    for (const auto& [v, e] : entries) {
        if (e == 0) continue;
        if (!e_.empty() && e_.back().first == v)
            e_.back().second += e;
        else
            e_.push_back({v, e});
    }
}

Monomial Monomial::var(VarId v, std::uint32_t e) {
    Monomial m;
    if (e) m.e_.push_back({v, e});
    return m;
}

std::uint32_t Monomial::exponent(VarId v) const {
    auto it = std::lower_bound(e_.begin(), e_.end(), v, [](const Entry& x, VarId k) { return x.first < k; });
    return (it != e_.end() && it->first == v) ? it->second : 0;
}

std::uint64_t Monomial::total_degree() const {
    std::uint64_t s = 0;
    for (const auto& x : e_) s += x.second;
    return s;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    r.e_.reserve(e_.size() + o.e_.size());
    std::size_t i = 0, j = 0;
    while (i < e_.size() || j < o.e_.size()) {
        if (j == o.e_.size() || (i < e_.size() && e_[i].first < o.e_[j].first))
            r.e_.push_back(e_[i++]);
        else if (i == e_.size() || o.e_[j].first < e_[i].first)
            r.e_.push_back(o.e_[j++]);
        else {
            r.e_.push_back({e_[i].first, e_[i].second + o.e_[j].second});
            ++i;
            ++j;
        }
    }
    return r;
}

bool Monomial::divides(const Monomial& o) const {
    for (const auto& [v, e] : e_)
        if (o.exponent(v) < e) return false;
    return true;
}

Monomial Monomial::quotient(const Monomial& o) const {
    if (!o.divides(*this)) throw std::domain_error("monomial not divisible");
    std::vector<Entry> r;
    for (const auto& [v, e] : e_) {
        std::uint32_t sub = o.exponent(v);
        if (e > sub) r.push_back({v, e - sub});
    }
    Monomial m;
    m.e_ = std::move(r);
    return m;
}

Monomial Monomial::without(VarId v) const {
    Monomial m;
    for (const auto& x : e_)
        if (x.first != v) m.e_.push_back(x);
    return m;
}

Monomial Monomial::with_exponent(VarId v, std::uint32_t e) const {
    std::vector<Entry> r = without(v).e_;
    if (e) r.push_back({v, e});
    return Monomial(std::move(r));
}

std::string Monomial::to_string() const {
    if (e_.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < e_.size(); ++i) {
        if (i) s += "*";
        s += var_name(e_[i].first);
        if (e_[i].second != 1) s += "^" + std::to_string(e_[i].second);
    }
    return s;
}

bool grevlex_greater(const Monomial& a, const Monomial& b) {
    auto da = a.total_degree(), db = b.total_degree();
    if (da != db) return da > db;
    const auto& x = a.entries();
    const auto& y = b.entries();
    auto i = x.size(), j = y.size();
    while (i > 0 || j > 0) {
        VarId vx = i > 0 ? x[i - 1].first : 0;
        VarId vy = j > 0 ? y[j - 1].first : 0;
        std::uint32_t ex = 0, ey = 0;
        VarId v;
        if (i > 0 && (j == 0 || vx >= vy)) v = vx;
        else v = vy;
        if (i > 0 && x[i - 1].first == v) ex = x[--i].second;
        if (j > 0 && y[j - 1].first == v) ey = y[--j].second;
        if (ex != ey) return ex < ey;
    }
    return false;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (const auto& [v, e] : m.entries()) {
        h ^= (static_cast<std::size_t>(v) << 20) ^ e;
        h *= 1099511628211ull;
    }
    return h;
}

Grading Grading::standard() {
    Grading g;
    g.standard_ = true;
    return g;
}

int Grading::weight(VarId v) const {
    auto it = over_.find(v);
    if (it != over_.end()) return it->second;
    if (!standard_) return 1;
    if (is_c(v)) return c_index(v);
    if (v >= 256 && v < 512) return static_cast<int>((v - 256) % 16);
    return 1;
}

long Grading::degree(const Monomial& m) const {
    long s = 0;
    for (const auto& [v, e] : m.entries()) s += static_cast<long>(weight(v)) * e;
    return s;
}

std::string coeff_string(const Int& c) { return c.get_str(); }
std::string coeff_string(const Rat& c) { return c.get_str(); }

QPoly to_rational(const Poly& p) {
    QPoly::Map m;
    for (const auto& [mono, c] : p.terms()) m.emplace(mono, Rat(c));
    return QPoly::from_map(std::move(m));
}

namespace {

template <class C>
C parse_coeff(std::string_view s) {
    std::string str(s);
    if constexpr (std::is_same_v<C, Int>) {
        Int v;
        if (str.empty() || v.set_str(str, 10) != 0) throw std::invalid_argument("bad integer: " + str);
        return v;
    } else {
        Rat v;
        if (str.empty() || v.set_str(str, 10) != 0) throw std::invalid_argument("bad rational: " + str);
        v.canonicalize();
        return v;
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

template <class C>
SparsePolynomial<C> parse_generic(std::string_view text) {
    text = trim(text);
    if (text.empty()) throw std::invalid_argument("empty polynomial");
    typename SparsePolynomial<C>::Map acc;
    std::size_t pos = 0;
    int sign = 1;
    if (text[0] == '-') {
        sign = -1;
        pos = 1;
    } else if (text[0] == '+') {
        pos = 1;
    }
    while (pos <= text.size()) {
        // a binary +/- is one surrounded by whitespace or at a factor boundary
        std::size_t end = pos;
        while (end < text.size()) {
            char ch = text[end];
            if ((ch == '+' || ch == '-') && end > pos) break;
            ++end;
        }
        std::string_view term = trim(text.substr(pos, end - pos));
        if (term.empty()) throw std::invalid_argument("empty term in: " + std::string(text));
        C coeff(sign);
        std::vector<Monomial::Entry> entries;
        std::size_t p = 0;
        while (p < term.size()) {
            while (p < term.size() && (term[p] == '*' || std::isspace(static_cast<unsigned char>(term[p])))) ++p;
            if (p >= term.size()) break;
            std::size_t q = p;
            while (q < term.size() && term[q] != '*' && !std::isspace(static_cast<unsigned char>(term[q]))) ++q;
            std::string_view factor = term.substr(p, q - p);
            p = q;
            if (std::isdigit(static_cast<unsigned char>(factor[0]))) {
                coeff *= parse_coeff<C>(factor);
                continue;
            }
            auto caret = factor.find('^');
            std::string_view name = factor.substr(0, caret);
            std::uint32_t e = 1;
            if (caret != std::string_view::npos) {
                std::string_view es = factor.substr(caret + 1);
                std::uint32_t v = 0;
                auto r = std::from_chars(es.data(), es.data() + es.size(), v);
                if (es.empty() || r.ec != std::errc() || r.ptr != es.data() + es.size())
                    throw std::invalid_argument("bad exponent in: " + std::string(factor));
                e = v;
            }
            entries.push_back({var_id(name), e});
        }
        Monomial m(std::move(entries));
        auto it = acc.find(m);
        if (it == acc.end())
            acc.emplace(m, coeff);
        else
            it->second += coeff;
        if (end >= text.size()) break;
        sign = text[end] == '-' ? -1 : 1;
        pos = end + 1;
    }
    return SparsePolynomial<C>::from_map(std::move(acc));
}

}  // namespace

Poly parse_poly(std::string_view text) { return parse_generic<Int>(text); }
QPoly parse_qpoly(std::string_view text) { return parse_generic<Rat>(text); }

Monomial parse_monomial(std::string_view text) {
    Poly p = parse_poly(text);
    if (p.size() != 1 || p.terms()[0].second != 1) throw std::invalid_argument("not a monomial: " + std::string(text));
    return p.terms()[0].first;
}

}  // namespace jt
