#include "badcodes/erasure.hpp"

#include <stdexcept>

namespace badcodes {

ErasureSymbol erasure_add(ErasureSymbol a, ErasureSymbol b) {
    if (is_erased(a) || is_erased(b)) return ErasureSymbol::erased;
    return static_cast<ErasureSymbol>(static_cast<std::uint8_t>(a) ^
                                      static_cast<std::uint8_t>(b));
}

ErasureSymbol erasure_mul(ErasureSymbol a, ErasureSymbol b) {
    if (is_erased(a)) return b;
    if (is_erased(b)) return a;
    if (a != b)
        throw std::logic_error("erasure_mul: conflicting non-erased symbols "
                               "(decoder bug: inputs disagree on a revealed bit)");
    return a;
}

double circ(double d1, double d2) {
    check_probability(d1, "circ d1");
    check_probability(d2, "circ d2");
    return d1 + d2 * (1.0 - d1);
}

double ErasureWord::erasure_rate() const {
    if (symbols_.empty())
        throw std::invalid_argument("erasure_rate: empty word");
    return static_cast<double>(erasure_count()) / static_cast<double>(size());
}

std::size_t ErasureWord::erasure_count() const {
    std::size_t c = 0;
    for (auto s : symbols_)
        if (is_erased(s)) ++c;
    return c;
}

std::string ErasureWord::to_string() const {
    std::string out;
    out.reserve(size());
    for (auto s : symbols_) {
        switch (s) {
            case ErasureSymbol::zero: out.push_back('0'); break;
            case ErasureSymbol::one: out.push_back('1'); break;
            case ErasureSymbol::erased: out.push_back('e'); break;
        }
    }
    return out;
}

ErasureWord ErasureWord::from_string(const std::string& s) {
    std::vector<ErasureSymbol> syms;
    syms.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '0': syms.push_back(ErasureSymbol::zero); break;
            case '1': syms.push_back(ErasureSymbol::one); break;
            case 'e': syms.push_back(ErasureSymbol::erased); break;
            default:
                throw std::invalid_argument("ErasureWord::from_string: bad char");
        }
    }
    return ErasureWord(std::move(syms));
}

ErasureWord erasure_mul(const ErasureWord& a, const ErasureWord& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("erasure_mul: length mismatch");
    ErasureWord out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = erasure_mul(a[i], b[i]);
    return out;
}

ErasureWord erasure_add(const ErasureWord& a, const ErasureWord& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("erasure_add: length mismatch");
    ErasureWord out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = erasure_add(a[i], b[i]);
    return out;
}

bool is_degraded(const ErasureWord& y, const ErasureWord& x) {
    if (y.size() != x.size())
        throw std::invalid_argument("is_degraded: length mismatch");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (is_erased(x[i]) && !is_erased(y[i])) return false;
    return true;
}

ErasureWord sample_bec(const ErasureWord& x, double delta, RandomStream& rng) {
    check_probability(delta, "sample_bec delta");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (is_erased(x[i]))
            throw std::invalid_argument("sample_bec: input already contains erasures");
    ErasureWord out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = rng.bernoulli(delta) ? ErasureSymbol::erased : x[i];
    return out;
}

ErasureWord sample_noise_word(std::size_t n, double delta, RandomStream& rng) {
    check_probability(delta, "sample_noise_word delta");
    ErasureWord out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = rng.bernoulli(delta) ? ErasureSymbol::erased : ErasureSymbol::zero;
    return out;
}

void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument(std::string(what) + ": not in [0,1]");
}

} // namespace badcodes
