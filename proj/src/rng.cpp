#include "mstream/rng.hpp"

#include "mstream/errors.hpp"

namespace mstream {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed) {
    std::uint64_t s = seed;
    gen_.seed(splitmix64(s));
}

std::uint64_t Rng::next_u64() { return gen_(); }

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw InputError("Rng::below(0)");
    if (n == 1) return 0;
    // Rejection sampling on the top of the range to avoid modulo bias.
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t draw;
    do {
        draw = gen_();
    } while (draw >= limit);
    return draw % n;
}

bool Rng::bernoulli(const Rat& q) {
    if (q < 0 || q > 1) throw InputError("bernoulli probability outside [0,1]");
    if (q == 1) return true;
    if (q == 0) return false;
    const mpz_class& den = q.get_den();
    const mpz_class& num = q.get_num();
    // Uniform below den: draw bitlen(den) random bits, reject until < den.
    std::size_t bits = mpz_sizeinbase(den.get_mpz_t(), 2);
    std::size_t words = (bits + 63) / 64;
    mpz_class draw;
    do {
        draw = 0;
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t x = gen_();
            draw <<= 64;
            draw += mpz_class(static_cast<unsigned long>(x >> 32)) << 32 |
                    mpz_class(static_cast<unsigned long>(x & 0xffffffffULL));
        }
        // Mask down to bitlen(den) bits so acceptance probability is >= 1/2.
        mpz_class mask = (mpz_class(1) << bits) - 1;
        draw &= mask;
    } while (draw >= den);
    return draw < num;
}

Rng Rng::split(std::uint64_t stream) const {
    std::uint64_t s = seed_ ^ (0x636f696eULL + stream * 0x9e3779b97f4a7c15ULL);
    std::uint64_t derived = splitmix64(s);
    return Rng(derived);
}

}  // namespace mstream
