#include "asym/pts.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace asym {

namespace {

struct Token {
    std::string text;
    int line;
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> tokens;
    int line = 1;
    std::string cur;
    int cur_line = 1;
    for (const char c : text) {
        if (c == '\n' || std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) {
                tokens.push_back({cur, cur_line});
                cur.clear();
            }
            if (c == '\n')
                ++line;
        } else {
            if (cur.empty())
                cur_line = line;
            cur += c;
        }
    }
    if (!cur.empty())
        tokens.push_back({cur, cur_line});
    return tokens;
}

[[noreturn]] void fail(int line, const std::string& what) {
    raise(errc::parse_error, what + " (line " + std::to_string(line) + ")");
}

double parse_number(const Token& t, const char* what) {
    const char* s = t.text.c_str();
    char* end = nullptr;
    const double v = std::strtod(s, &end);
    if (end == s || *end != '\0')
        fail(t.line, std::string("expected ") + what + ", got '" + t.text + "'");
    return v;
}

} // namespace

Landmarks parse_pts(const std::string& text) {
    const std::vector<Token> tokens = tokenize(text);
    std::size_t i = 0;
    auto peek = [&]() -> const Token& {
        if (i >= tokens.size())
            fail(tokens.empty() ? 1 : tokens.back().line, "unexpected end of file");
        return tokens[i];
    };
    auto take = [&]() -> const Token& {
        const Token& t = peek();
        ++i;
        return t;
    };

    // optional version tag ("version:" "1" or "version:1")
    if (i < tokens.size() && tokens[i].text.rfind("version:", 0) == 0) {
        if (tokens[i].text == "version:")
            i += 2;
        else
            i += 1;
    }

    const Token& np = take();
    long declared = -1;
    if (np.text == "n_points:") {
        declared = static_cast<long>(parse_number(take(), "point count"));
    } else if (np.text.rfind("n_points:", 0) == 0) {
        Token t{np.text.substr(9), np.line};
        declared = static_cast<long>(parse_number(t, "point count"));
    } else {
        fail(np.line, "expected n_points:, got '" + np.text + "'");
    }
    if (declared < 0)
        fail(np.line, "negative point count");

    const Token& open = take();
    if (open.text != "{")
        fail(open.line, "expected '{', got '" + open.text + "'");

    Landmarks lm;
    lm.points.reserve(static_cast<std::size_t>(declared));
    for (long k = 0; k < declared; ++k) {
        const Token& tx = peek();
        if (tx.text == "}")
            fail(tx.line, "declared " + std::to_string(declared) + " points but found only " +
                              std::to_string(k));
        const double x = parse_number(take(), "x coordinate");
        const double y = parse_number(take(), "y coordinate");
        lm.points.push_back({x, y});
    }

    const Token& close = take();
    if (close.text != "}")
        fail(close.line, "expected '}' after " + std::to_string(declared) + " points, got '" +
                             close.text + "'");
    return lm;
}

std::string format_pts(const Landmarks& lm) {
    std::string out = "version: 1\nn_points: " + std::to_string(lm.size()) + "\n{\n";
    char buf[80];
    for (const Point& p : lm.points) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x, p.y);
        out += buf;
    }
    out += "}\n";
    return out;
}

Landmarks read_pts_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        raise(errc::invalid_input, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_pts(ss.str());
    } catch (const error& e) {
        if (e.code() == errc::parse_error)
            raise(errc::parse_error, path + ": " + e.what());
        throw;
    }
}

void write_pts_file(const std::string& path, const Landmarks& lm) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        raise(errc::invalid_input, "cannot write " + path);
    const std::string text = format_pts(lm);
    out.write(text.data(), static_cast<long>(text.size()));
}

} // namespace asym
