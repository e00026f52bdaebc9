#include "subfde/config.hpp"

#include "subfde/errors.hpp"
#include "subfde/expr.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace subfde {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Splits on commas outside double quotes.
std::vector<std::string_view> split_fields(std::string_view s) {
    std::vector<std::string_view> out;
    bool quoted = false;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') quoted = !quoted;
        if (s[i] == ',' && !quoted) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    out.push_back(trim(s.substr(start)));
    return out;
}

std::string_view strip_comment(std::string_view line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

std::string unquote(std::string_view field, int line) {
    if (field.size() >= 2 && field.front() == '"' && field.back() == '"')
        return std::string(field.substr(1, field.size() - 2));
    if (field.find('"') != std::string_view::npos) throw ConfigError("unbalanced quotes", line);
    return std::string(field);
}

std::string expression_field(std::string_view field, int line) {
    std::string text = unquote(field, line);
    try {
        parse_expression(text);
    } catch (const ParseError& e) {
        throw ConfigError(std::string("bad expression \"") + text + "\": " + e.what(), line);
    }
    return text;
}

double number_field(std::string_view field, int line) {
    const std::string text = unquote(field, line);
    try {
        const Expression e = parse_expression(text);
        if (!e.is_constant()) throw ConfigError("expected a constant, got \"" + text + "\"", line);
        const double v = e.eval(0.0);
        if (!std::isfinite(v)) throw ConfigError("non-finite value \"" + text + "\"", line);
        return v;
    } catch (const ParseError& e) {
        throw ConfigError(std::string("bad number \"") + text + "\": " + e.what(), line);
    } catch (const DomainError& e) {
        throw ConfigError(std::string("bad number \"") + text + "\": " + e.what(), line);
    }
}

void expect_fields(const std::vector<std::string_view>& fields, std::size_t n, std::string_view key, int line) {
    if (fields.size() != n)
        throw ConfigError(std::string(key) + " expects " + std::to_string(n) + " value(s), got " +
                              std::to_string(fields.size()),
                          line);
}

}  // namespace

FdeProblem ProblemConfig::problem() const {
    try {
        std::vector<DerivativeTerm> built;
        built.reserve(terms.size());
        for (const auto& t : terms) built.push_back({FracOrder(t.alpha), parse_expression(t.coefficient)});
        return FdeProblem(std::move(built), parse_expression(p), parse_expression(f), ics);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what(), 0);
    } catch (const ParseError& e) {
        throw ConfigError(e.what(), 0);
    }
}

ProblemConfig parse_config(std::string_view text) {
    ProblemConfig cfg;
    bool have_h = false;
    bool have_end = false;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string_view content = trim(strip_comment(raw));
        if (content.empty()) continue;
        const auto eq = content.find('=');
        if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line);
        const std::string_view key = trim(content.substr(0, eq));
        const std::string_view value = trim(content.substr(eq + 1));
        if (value.empty()) throw ConfigError("missing value for '" + std::string(key) + "'", line);
        const auto fields = split_fields(value);

        if (key == "term") {
            expect_fields(fields, 2, key, line);
            cfg.terms.push_back({number_field(fields[0], line), expression_field(fields[1], line)});
        } else if (key == "p") {
            expect_fields(fields, 1, key, line);
            cfg.p = expression_field(fields[0], line);
        } else if (key == "f") {
            expect_fields(fields, 1, key, line);
            cfg.f = expression_field(fields[0], line);
        } else if (key == "ics") {
            cfg.ics.clear();
            for (auto field : fields) cfg.ics.push_back(number_field(field, line));
        } else if (key == "h") {
            expect_fields(fields, 1, key, line);
            cfg.h = number_field(fields[0], line);
            if (!(cfg.h > 0.0)) throw ConfigError("h must be positive", line);
            have_h = true;
        } else if (key == "t_end") {
            expect_fields(fields, 1, key, line);
            cfg.t_end = number_field(fields[0], line);
            if (!(cfg.t_end > 0.0)) throw ConfigError("t_end must be positive", line);
            have_end = true;
        } else if (key == "calibrate") {
            expect_fields(fields, 3, key, line);
            cfg.calibrate = CalibrationSpec{number_field(fields[0], line), number_field(fields[1], line),
                                            number_field(fields[2], line)};
        } else if (key == "exact") {
            expect_fields(fields, 1, key, line);
            cfg.exact = expression_field(fields[0], line);
        } else {
            throw ConfigError("unknown key '" + std::string(key) + "'", line);
        }
    }
    if (cfg.terms.empty()) throw ConfigError("no 'term' lines", 0);
    if (!have_h) throw ConfigError("missing 'h'", 0);
    if (!have_end) throw ConfigError("missing 't_end'", 0);
    cfg.problem();
    return cfg;
}

ProblemConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string(), 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace subfde
