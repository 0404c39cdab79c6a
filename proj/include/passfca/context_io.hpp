#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "passfca/context.hpp"
#include "passfca/errors.hpp"

namespace passfca {

// Burmeister CXT:
//
//   B
//   <blank>
//   |G|
//   |M|
//   <blank>
//   |G| object names, |M| attribute names, then |G| rows of '.'/'X'.

inline void write_cxt(std::ostream& out, const FormalContext& ctx)
{
    out << "B\n\n" << ctx.object_count() << '\n' << ctx.attribute_count() << "\n\n";
    for (const auto& g : ctx.objects()) out << g << '\n';
    for (const auto& m : ctx.attributes()) out << m << '\n';
    std::string line(ctx.attribute_count(), '.');
    for (const auto& row : ctx.rows()) {
        std::fill(line.begin(), line.end(), '.');
        for (auto m : row) line[m] = 'X';
        out << line << '\n';
    }
}

inline std::string to_cxt(const FormalContext& ctx)
{
    std::ostringstream out;
    write_cxt(out, ctx);
    return out.str();
}

namespace detail {

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    std::string next(const char* what)
    {
        std::string line;
        if (!std::getline(in_, line))
            throw ParseError("cxt: unexpected end of input, expected " + std::string(what), line_ + 1);
        ++line_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
    }
    std::size_t line() const noexcept { return line_; }

private:
    std::istream& in_;
    std::size_t line_ = 0;
};

inline std::size_t parse_count(const std::string& text, std::size_t line)
{
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("cxt: expected a non-negative count, got '" + text + "'", line);
    return std::stoull(text);
}

} // namespace detail

inline FormalContext read_cxt(std::istream& in)
{
    detail::LineReader lines(in);
    if (lines.next("header 'B'") != "B") throw ParseError("cxt: first line must be 'B'", 1);
    if (!lines.next("blank line").empty()) throw ParseError("cxt: expected blank line", lines.line());
    auto n_objects = detail::parse_count(lines.next("object count"), lines.line());
    auto n_attributes = detail::parse_count(lines.next("attribute count"), lines.line());
    if (!lines.next("blank line").empty()) throw ParseError("cxt: expected blank line", lines.line());

    std::vector<std::string> objects, attributes;
    objects.reserve(n_objects);
    attributes.reserve(n_attributes);
    for (std::size_t g = 0; g < n_objects; ++g) objects.push_back(lines.next("object name"));
    for (std::size_t m = 0; m < n_attributes; ++m) attributes.push_back(lines.next("attribute name"));

    std::vector<AttributeSet> rows;
    rows.reserve(n_objects);
    for (std::size_t g = 0; g < n_objects; ++g) {
        auto text = lines.next("incidence row");
        if (text.size() != n_attributes)
            throw ParseError("cxt: row of length " + std::to_string(text.size()) + ", expected " +
                                 std::to_string(n_attributes),
                             lines.line());
        AttributeSet row(n_attributes);
        for (std::size_t m = 0; m < n_attributes; ++m) {
            char c = text[m];
            if (c == 'X' || c == 'x')
                row.insert(m);
            else if (c != '.')
                throw ParseError(std::string("cxt: unexpected cell character '") + c + "'", lines.line());
        }
        rows.push_back(std::move(row));
    }
    try {
        return FormalContext(std::move(objects), std::move(attributes), std::move(rows));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("cxt: ") + e.what(), lines.line());
    }
}

inline FormalContext from_cxt(const std::string& text)
{
    std::istringstream in(text);
    return read_cxt(in);
}

inline FormalContext load_cxt(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    return read_cxt(in);
}

inline void save_cxt(const std::filesystem::path& path, const FormalContext& ctx)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    write_cxt(out, ctx);
    if (!out) throw IoError("write failed for " + path.string());
}

/// Matrix as CSV: header row of attribute labels after an empty corner cell,
/// then one row per object with 0/1 cells.
inline void write_context_csv(std::ostream& out, const FormalContext& ctx)
{
    for (const auto& m : ctx.attributes()) out << ',' << m;
    out << '\n';
    for (std::size_t g = 0; g < ctx.object_count(); ++g) {
        out << ctx.object(g);
        for (std::size_t m = 0; m < ctx.attribute_count(); ++m) out << ',' << (ctx.incident(g, m) ? '1' : '0');
        out << '\n';
    }
}

} // namespace passfca
