#include "mstream/rational.hpp"

#include <cctype>

#include "mstream/errors.hpp"

namespace mstream {

Rat make_rat(long num, long den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

Rat parse_unsigned(const std::string& text) {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        std::string num = text.substr(0, slash);
        std::string den = text.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) {
            throw InputError("malformed rational literal: '" + text + "'");
        }
        mpz_class d(den, 10);
        if (d == 0) throw InputError("zero denominator in '" + text + "'");
        Rat r(mpz_class(num, 10), d);
        r.canonicalize();
        return r;
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) {
        if (!all_digits(text)) {
            throw InputError("malformed decimal literal: '" + text + "'");
        }
        return Rat(mpz_class(text, 10));
    }
    std::string whole = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    if (!all_digits(whole) || !all_digits(frac)) {
        throw InputError("malformed decimal literal: '" + text + "'");
    }
    mpz_class scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Rat r(mpz_class(whole, 10) * scale + mpz_class(frac, 10), scale);
    r.canonicalize();
    return r;
}

}  // namespace

Rat parse_decimal(const std::string& text) {
    if (!text.empty() && text[0] == '-') {
        throw InputError("negative value not allowed: '" + text + "'");
    }
    return parse_unsigned(text);
}

Rat parse_signed_decimal(const std::string& text) {
    if (!text.empty() && text[0] == '-') {
        return -parse_unsigned(text.substr(1));
    }
    return parse_unsigned(text);
}

std::string to_fraction_string(const Rat& value) {
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::optional<std::string> to_decimal_string(const Rat& value) {
    mpz_class num = value.get_num();
    mpz_class den = value.get_den();
    bool negative = num < 0;
    if (negative) num = -num;
    // Strip factors of 2 and 5; a pure power-of-ten denominator remains 1.
    unsigned long twos = 0, fives = 0;
    mpz_class d = den;
    while (d % 2 == 0) { d /= 2; ++twos; }
    while (d % 5 == 0) { d /= 5; ++fives; }
    if (d != 1) return std::nullopt;
    unsigned long digits = std::max(twos, fives);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    mpz_class scaled = num * (scale / den);
    std::string s = scaled.get_str();
    std::string out;
    if (digits == 0) {
        out = s;
    } else {
        if (s.size() <= digits) s.insert(0, digits - s.size() + 1, '0');
        out = s.substr(0, s.size() - digits) + "." + s.substr(s.size() - digits);
        while (out.back() == '0') out.pop_back();
        if (out.back() == '.') out.pop_back();
    }
    return negative ? "-" + out : out;
}

std::string to_approx_string(const Rat& value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value.get_d());
    return buf;
}

unsigned long ceil_log(const Rat& base, const Rat& target) {
    if (base <= 1) throw InputError("ceil_log requires base > 1");
    unsigned long level = 0;
    Rat power = 1;
    while (power < target) {
        power *= base;
        ++level;
    }
    return level;
}

}  // namespace mstream
