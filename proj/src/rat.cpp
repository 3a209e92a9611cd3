#include "sg/rat.hpp"

#include "sg/errors.hpp"

#include <cctype>

namespace sg {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

} // namespace

Rat rat_parse(std::string_view text) {
    std::string_view s = text;
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        s.remove_prefix(1);
    }
    std::string_view num = s, den = "1";
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        num = s.substr(0, slash);
        den = s.substr(slash + 1);
    }
    if (!all_digits(num) || !all_digits(den))
        throw InputError("bad rational '" + std::string(text) + "': expected n or n/d");
    Int n(std::string(num), 10), d(std::string(den), 10);
    if (d == 0)
        throw InputError("bad rational '" + std::string(text) + "': zero denominator");
    Rat q(n, d);
    q.canonicalize();
    if (neg) q = -q;
    return q;
}

std::string rat_str(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

} // namespace sg
