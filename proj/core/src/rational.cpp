#include "pctlab/rational.hpp"

#include "pctlab/errors.hpp"

#include <cctype>

namespace pctlab {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

} // namespace

Rat parse_rational(std::string_view text) {
    std::string_view rest = text;
    bool negative = false;
    if (!rest.empty() && (rest.front() == '+' || rest.front() == '-')) {
        negative = rest.front() == '-';
        rest.remove_prefix(1);
    }

    auto fail = [&]() -> Rat {
        throw InputError("not a rational: '" + std::string(text) + "'");
    };

    const auto slash = rest.find('/');
    const auto dot = rest.find('.');
    Rat value;
    if (slash != std::string_view::npos) {
        const std::string_view num = rest.substr(0, slash);
        const std::string_view den = rest.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) {
            return fail();
        }
        const BigInt d{std::string(den)};
        if (d == 0) {
            throw InputError("zero denominator: '" + std::string(text) + "'");
        }
        value = Rat(BigInt{std::string(num)}, d);
    } else if (dot != std::string_view::npos) {
        const std::string_view whole = rest.substr(0, dot);
        const std::string_view frac = rest.substr(dot + 1);
        if (!all_digits(whole) || !all_digits(frac)) {
            return fail();
        }
        BigInt scale = 1;
        for (size_t i = 0; i < frac.size(); ++i) {
            scale *= 10;
        }
        const BigInt numerator = BigInt{std::string(whole)} * scale + BigInt{std::string(frac)};
        value = Rat(numerator, scale);
    } else {
        if (!all_digits(rest)) {
            return fail();
        }
        value = Rat(BigInt{std::string(rest)});
    }
    return negative ? Rat(-value) : value;
}

std::string format_rational(const Rat& value) {
    const BigInt num = boost::multiprecision::numerator(value);
    const BigInt den = boost::multiprecision::denominator(value);
    std::string out = num.str();
    if (den != 1) {
        out += '/';
        out += den.str();
    }
    return out;
}

double approx(const Rat& value) {
    return value.convert_to<double>();
}

} // namespace pctlab
