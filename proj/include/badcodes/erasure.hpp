#ifndef BADCODES_ERASURE_HPP
#define BADCODES_ERASURE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "badcodes/rng.hpp"

namespace badcodes {

// Ternary channel symbol. zero/one carry a bit, erased absorbs addition
// and is neutral under multiplication.
enum class ErasureSymbol : std::uint8_t { zero = 0, one = 1, erased = 2 };

inline bool is_erased(ErasureSymbol s) { return s == ErasureSymbol::erased; }

// Erasure addition: erased if either operand is erased, XOR of bits otherwise.
ErasureSymbol erasure_add(ErasureSymbol a, ErasureSymbol b);

// Erasure multiplication: the non-erased operand wins. Two non-erased
// operands must agree; a mismatch means a decoder fed inconsistent values
// and throws.
ErasureSymbol erasure_mul(ErasureSymbol a, ErasureSymbol b);

// Composition of two erasure-noise levels: d1 + d2*(1-d1).
double circ(double d1, double d2);

class ErasureWord {
public:
    ErasureWord() = default;
    explicit ErasureWord(std::size_t n, ErasureSymbol fill = ErasureSymbol::zero)
        : symbols_(n, fill) {}
    explicit ErasureWord(std::vector<ErasureSymbol> symbols)
        : symbols_(std::move(symbols)) {}

    std::size_t size() const { return symbols_.size(); }
    ErasureSymbol operator[](std::size_t i) const { return symbols_[i]; }
    ErasureSymbol& operator[](std::size_t i) { return symbols_[i]; }
    const std::vector<ErasureSymbol>& symbols() const { return symbols_; }

    double erasure_rate() const;
    std::size_t erasure_count() const;

    // ASCII over {0,1,e}, used by golden-file tests
    std::string to_string() const;
    static ErasureWord from_string(const std::string& s);

    bool operator==(const ErasureWord& o) const { return symbols_ == o.symbols_; }

private:
    std::vector<ErasureSymbol> symbols_;
};

// Componentwise erasure product of two equal-length words.
ErasureWord erasure_mul(const ErasureWord& a, const ErasureWord& b);
// Componentwise erasure sum.
ErasureWord erasure_add(const ErasureWord& a, const ErasureWord& b);

// True iff the erasure index set of y contains that of x.
bool is_degraded(const ErasureWord& y, const ErasureWord& x);

// Pass x through a BEC(delta): each symbol independently erased.
ErasureWord sample_bec(const ErasureWord& x, double delta, RandomStream& rng);

// Noise word over {0,e}: component erased with probability delta.
ErasureWord sample_noise_word(std::size_t n, double delta, RandomStream& rng);

void check_probability(double p, const char* what);

} // namespace badcodes

#endif
