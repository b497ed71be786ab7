#include "iddecli/problem_file.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

namespace idde::cli {

namespace {

std::string join(const std::vector<std::string>& errors) {
    std::ostringstream out;
    out << "problem file errors:";
    for (const auto& e : errors) out << "\n  - " << e;
    return out.str();
}

std::string trim(std::string_view sv) {
    std::size_t b = 0, e = sv.size();
    while (b < e && std::isspace(static_cast<unsigned char>(sv[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(sv[e - 1]))) --e;
    return std::string(sv.substr(b, e - b));
}

std::optional<double> parse_number(const std::string& token) {
    if (token.empty()) return std::nullopt;
    char* end = nullptr;
    double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size()) return std::nullopt;
    return v;
}

std::vector<std::string> split_ws(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

}  // namespace

ParseError::ParseError(std::vector<std::string> errors)
    : std::runtime_error(join(errors)), errors_(std::move(errors)) {}

namespace {

struct Parser {
    std::vector<std::string> errors;

    void fail(int line, const std::string& msg) {
        errors.push_back("line " + std::to_string(line) + ": " + msg);
    }

    std::optional<std::vector<double>> list(int line, const std::string& text) {
        std::string body = trim(text);
        if (body.size() < 2 || body.front() != '[' || body.back() != ']') {
            fail(line, "expected a bracketed list [a, b, ...]");
            return std::nullopt;
        }
        body = body.substr(1, body.size() - 2);
        std::vector<double> values;
        std::string item;
        std::istringstream in(body);
        while (std::getline(in, item, ',')) {
            std::string tok = trim(item);
            if (tok.empty() && values.empty() && in.eof()) break;  // "[]"
            auto v = parse_number(tok);
            if (!v) {
                fail(line, "malformed list entry '" + tok + "'");
                return std::nullopt;
            }
            values.push_back(*v);
        }
        return values;
    }

    std::optional<idde::FunctionDescriptor> function(int line,
                                                     const std::string& text) {
        auto toks = split_ws(text);
        if (toks.empty()) {
            fail(line, "empty function definition");
            return std::nullopt;
        }
        auto numbers = [&](std::size_t from) -> std::optional<std::vector<double>> {
            std::vector<double> out;
            for (std::size_t i = from; i < toks.size(); ++i) {
                auto v = parse_number(toks[i]);
                if (!v) {
                    fail(line, "malformed number '" + toks[i] + "'");
                    return std::nullopt;
                }
                out.push_back(*v);
            }
            return out;
        };
        if (toks[0] == "constant") {
            auto vals = numbers(1);
            if (!vals || vals->size() != 1) {
                fail(line, "constant takes exactly one value");
                return std::nullopt;
            }
            return idde::FunctionDescriptor::constant((*vals)[0]);
        }
        if (toks[0] == "pwc") {
            auto vals = numbers(1);
            if (!vals || vals->empty() || vals->size() % 2 == 0) {
                fail(line, "pwc takes v0 followed by (t, v) pairs");
                return std::nullopt;
            }
            std::vector<double> breaks, values{(*vals)[0]};
            for (std::size_t i = 1; i + 1 < vals->size(); i += 2) {
                breaks.push_back((*vals)[i]);
                values.push_back((*vals)[i + 1]);
            }
            return idde::FunctionDescriptor::piecewise_constant(
                std::move(breaks), std::move(values));
        }
        if (toks[0] == "table") {
            auto vals = numbers(1);
            if (!vals || vals->size() < 4 || vals->size() % 2 != 0) {
                fail(line, "table takes at least two (t, v) pairs");
                return std::nullopt;
            }
            std::vector<double> abscissae, ordinates;
            for (std::size_t i = 0; i < vals->size(); i += 2) {
                abscissae.push_back((*vals)[i]);
                ordinates.push_back((*vals)[i + 1]);
            }
            return idde::FunctionDescriptor::table(std::move(abscissae),
                                                   std::move(ordinates));
        }
        fail(line, "unknown function kind '" + toks[0] + "'");
        return std::nullopt;
    }

    std::optional<idde::DeviationDescriptor> deviation(int line,
                                                       const std::string& text) {
        auto toks = split_ws(text);
        if (toks.empty()) {
            fail(line, "empty deviation definition");
            return std::nullopt;
        }
        if (toks[0] == "lag") {
            if (toks.size() != 2) {
                fail(line, "lag takes exactly one value");
                return std::nullopt;
            }
            auto v = parse_number(toks[1]);
            if (!v) {
                fail(line, "malformed number '" + toks[1] + "'");
                return std::nullopt;
            }
            return idde::DeviationDescriptor::constant_lag(*v);
        }
        if (toks[0] == "table") {
            std::vector<double> abscissae, values;
            if (toks.size() < 5 || toks.size() % 2 == 0) {
                fail(line, "table takes at least two (t, h) pairs");
                return std::nullopt;
            }
            for (std::size_t i = 1; i < toks.size(); i += 2) {
                auto a = parse_number(toks[i]);
                auto b = parse_number(toks[i + 1]);
                if (!a || !b) {
                    fail(line, "malformed number in deviation table");
                    return std::nullopt;
                }
                abscissae.push_back(*a);
                values.push_back(*b);
            }
            return idde::DeviationDescriptor::table(std::move(abscissae),
                                                    std::move(values));
        }
        fail(line, "unknown deviation kind '" + toks[0] + "'");
        return std::nullopt;
    }
};

}  // namespace

idde::ProblemSpec parse_problem_file(std::string_view text) {
    Parser parser;
    idde::ProblemSpec spec;
    bool have_initial = false;
    bool term_open = false;
    std::vector<double> points, multipliers, jumps;
    bool have_jumps = false;

    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::string content = trim(raw);
        if (content.empty()) continue;
        auto eq = content.find('=');
        if (eq == std::string::npos) {
            parser.fail(line, "expected 'key = value'");
            continue;
        }
        std::string key = trim(content.substr(0, eq));
        std::string value = trim(content.substr(eq + 1));

        if (key == "initial_value") {
            auto v = parse_number(value);
            if (!v)
                parser.fail(line, "malformed number '" + value + "'");
            else {
                spec.initial_value = *v;
                have_initial = true;
            }
        } else if (key == "forcing") {
            if (auto f = parser.function(line, value)) spec.forcing = *f;
        } else if (key == "history") {
            if (auto f = parser.function(line, value)) spec.history = *f;
        } else if (key == "term.coefficient") {
            if (auto f = parser.function(line, value)) {
                spec.terms.push_back(
                    {*f, idde::DeviationDescriptor::constant_lag(0.0)});
                term_open = true;
            }
        } else if (key == "term.delay") {
            if (!term_open)
                parser.fail(line, "term.delay before any term.coefficient");
            else if (auto d = parser.deviation(line, value))
                spec.terms.back().delay = *d;
        } else if (key == "impulses.points") {
            if (auto v = parser.list(line, value)) {
                points = *v;
                for (std::size_t j = 1; j < points.size(); ++j)
                    if (!(points[j] > points[j - 1])) {
                        parser.fail(line, "points not strictly increasing");
                        break;
                    }
            }
        } else if (key == "impulses.multipliers") {
            if (auto v = parser.list(line, value)) multipliers = *v;
        } else if (key == "impulses.jumps") {
            if (auto v = parser.list(line, value)) {
                jumps = *v;
                have_jumps = true;
            }
        } else {
            parser.fail(line, "unknown key '" + key + "'");
        }
    }

    if (!have_initial) parser.errors.push_back("missing initial_value");
    spec.impulses = have_jumps
                        ? idde::ImpulseSchedule::make(points, multipliers, jumps)
                        : idde::ImpulseSchedule::make(points, multipliers);

    for (const auto& e : idde::validate(spec))
        parser.errors.push_back("validation: " + e);
    if (!parser.errors.empty()) throw ParseError(std::move(parser.errors));
    return spec;
}

idde::ProblemSpec load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError({"cannot open problem file '" + path + "'"});
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_problem_file(buffer.str());
}

}  // namespace idde::cli
