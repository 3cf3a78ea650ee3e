#include "gue/window_spec.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <stdexcept>

namespace gue {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_number(const std::string& s, const std::string& context) {
    const std::string t = trim(s);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
        throw std::invalid_argument("window spec '" + context + "': bad number '" + s + "'");
    }
    return v;
}

std::vector<Interval> parse_intervals(const std::string& s, const std::string& context) {
    std::vector<Interval> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        if (s[pos] != '(') throw std::invalid_argument("window spec '" + context + "': expected '('");
        const auto close = s.find(')', pos);
        const auto comma = s.find(',', pos);
        if (close == std::string::npos || comma == std::string::npos || comma > close) {
            throw std::invalid_argument("window spec '" + context + "': expected (a,b)");
        }
        out.push_back({parse_number(s.substr(pos + 1, comma - pos - 1), context),
                       parse_number(s.substr(comma + 1, close - comma - 1), context)});
        pos = close + 1;
        if (pos < s.size()) {
            if (s[pos] != 'U') throw std::invalid_argument("window spec '" + context + "': expected 'U' between intervals");
            ++pos;
        }
    }
    if (out.empty()) throw std::invalid_argument("window spec '" + context + "': no intervals");
    return out;
}

}  // namespace

ScaledWindow parse_window(const std::string& raw_text) {
    std::string text;
    for (char c : raw_text) {
        if (!std::isspace(static_cast<unsigned char>(c))) text += c;
    }
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("window spec '" + raw_text + "': missing ':'");
    const std::string head = text.substr(0, colon);
    std::string body = text.substr(colon + 1);

    std::optional<double> kappa;
    if (const auto caret = body.find('^'); caret != std::string::npos) {
        kappa = parse_number(body.substr(caret + 1), raw_text);
        body = body.substr(0, caret);
    }
    const auto base = parse_intervals(body, raw_text);

    if (head == "raw") {
        if (kappa) throw std::invalid_argument("window spec '" + raw_text + "': raw windows take no exponent");
        return ScaledWindow(0.0, base, 0.0);
    }
    double center = 0.0;
    if (head == "edge-") {
        center = -2.0;
    } else if (head == "edge+") {
        center = 2.0;
    } else if (head.rfind("bulk@", 0) == 0) {
        center = parse_number(head.substr(5), raw_text);
        if (!(center > -2.0 && center < 2.0)) {
            throw std::invalid_argument("window spec '" + raw_text + "': bulk center must lie in (-2, 2)");
        }
    } else {
        throw std::invalid_argument("window spec '" + raw_text + "': unknown kind '" + head +
                                    "' (edge-, edge+, bulk@mu, raw)");
    }
    return kappa ? ScaledWindow(center, base, *kappa) : ScaledWindow(center, base);
}

std::vector<ScaledWindow> parse_windows(const std::string& text) {
    std::vector<ScaledWindow> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find(';', start);
        const std::string part = trim(text.substr(start, end == std::string::npos ? std::string::npos : end - start));
        if (!part.empty()) out.push_back(parse_window(part));
        if (end == std::string::npos) break;
        start = end + 1;
    }
    if (out.empty()) throw std::invalid_argument("window spec: no windows given");
    return out;
}

std::string describe_windows(const std::vector<ScaledWindow>& windows) {
    std::string s;
    for (std::size_t i = 0; i < windows.size(); ++i) {
        if (i) s += ';';
        s += windows[i].describe();
    }
    return s;
}

}  // namespace gue
