#pragma once

// Group definition files and the on-disk result cache.
//
// Group file:
//
//     # affine A2
//     name: A2~
//     generators: s t u
//     matrix:
//     1 3 3
//     3 1 3
//     3 3 1
//
// Blank lines and text after '#' are ignored.  0 in the matrix means an
// infinite label.  The generator order fixes ShortLex everywhere.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "coxeter.hpp"
#include "shadow.hpp"

namespace garside {

struct GroupFileError : std::runtime_error {
    GroupFileError(std::size_t line, const std::string& field, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ", " + field + ": " + msg), line(line), field(field) {}
    std::size_t line;
    std::string field;
};

struct GroupDefinition {
    std::string name;
    CoxeterMatrix matrix;
};

namespace detail {

inline std::string strip(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string tok; is >> tok;) out.push_back(tok);
    return out;
}

}  // namespace detail

inline GroupDefinition parse_group(const std::string& text) {
    std::istringstream is(text);
    std::string raw;
    std::size_t lineno = 0;
    std::optional<std::string> name;
    std::vector<std::string> gens;
    std::size_t gens_line = 0;
    bool in_matrix = false;
    std::size_t matrix_line = 0;
    std::vector<std::vector<int>> rows;
    std::vector<std::size_t> row_lines;

    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = raw.substr(0, raw.find('#'));
        line = detail::strip(line);
        if (line.empty()) continue;
        const auto colon = line.find(':');
        const bool numeric = line.find_first_not_of("0123456789 \t-") == std::string::npos;
        if (in_matrix && numeric) {
            std::vector<int> row;
            for (const std::string& tok : detail::split_ws(line)) {
                const std::string field = "matrix row " + std::to_string(rows.size() + 1) + ", column " +
                                          std::to_string(row.size() + 1);
                if (tok.size() > 6 || tok.find('-') != std::string::npos)
                    throw GroupFileError(lineno, field, "label '" + tok + "' out of range");
                row.push_back(std::stoi(tok));
            }
            rows.push_back(std::move(row));
            row_lines.push_back(lineno);
            continue;
        }
        if (colon == std::string::npos) throw GroupFileError(lineno, "line", "expected 'key: value'");
        const std::string key = detail::strip(line.substr(0, colon));
        const std::string value = detail::strip(line.substr(colon + 1));
        in_matrix = false;
        if (key == "name") {
            if (name) throw GroupFileError(lineno, "name", "duplicate key");
            name = value;
        } else if (key == "generators") {
            if (!gens.empty()) throw GroupFileError(lineno, "generators", "duplicate key");
            gens = detail::split_ws(value);
            gens_line = lineno;
            if (gens.empty()) throw GroupFileError(lineno, "generators", "no generators listed");
            for (const std::string& g : gens)
                if (g == "-" || g == "id" || g.find('.') != std::string::npos)
                    throw GroupFileError(lineno, "generators", "reserved generator name '" + g + "'");
        } else if (key == "matrix") {
            if (matrix_line) throw GroupFileError(lineno, "matrix", "duplicate key");
            if (!value.empty()) throw GroupFileError(lineno, "matrix", "rows go on the following lines");
            in_matrix = true;
            matrix_line = lineno;
        } else {
            throw GroupFileError(lineno, key, "unknown key");
        }
    }
    if (gens.empty()) throw GroupFileError(lineno, "generators", "missing");
    if (!matrix_line) throw GroupFileError(lineno, "matrix", "missing");
    if (rows.size() != gens.size())
        throw GroupFileError(rows.empty() ? matrix_line : row_lines.back(), "matrix",
                             "expected " + std::to_string(gens.size()) + " rows, found " +
                                 std::to_string(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].size() != gens.size())
            throw GroupFileError(row_lines[i], "matrix row " + std::to_string(i + 1),
                                 "expected " + std::to_string(gens.size()) + " entries, found " +
                                     std::to_string(rows[i].size()));
    if (gens.size() > kMaxRank)
        throw GroupFileError(gens_line, "generators", "rank above " + std::to_string(kMaxRank));
    try {
        return {name.value_or(""), CoxeterMatrix(gens, rows)};
    } catch (const MatrixError& e) {
        const std::size_t line = e.row() >= 1 ? row_lines[static_cast<std::size_t>(e.row() - 1)] : gens_line;
        const std::string field = e.row() >= 1 ? "matrix row " + std::to_string(e.row()) + ", column " +
                                                     std::to_string(e.col())
                                               : "generators";
        throw GroupFileError(line, field, e.what());
    }
}

/// Writes a group file that parse_group reads back to the same matrix.
inline std::string format_group(const GroupDefinition& def) {
    std::ostringstream os;
    if (!def.name.empty()) os << "name: " << def.name << "\n";
    os << "generators:";
    for (const auto& n : def.matrix.names()) os << ' ' << n;
    os << "\nmatrix:\n";
    for (std::size_t i = 0; i < def.matrix.rank(); ++i) {
        for (std::size_t j = 0; j < def.matrix.rank(); ++j) os << (j ? " " : "") << def.matrix.label(i, j);
        os << "\n";
    }
    return os.str();
}

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoError("cannot read " + p.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

/// Writes to a sibling temporary file, then renames it into place.
inline void write_file_atomic(const std::filesystem::path& p, const std::string& content) {
    namespace fs = std::filesystem;
    std::random_device rd;
    const fs::path tmp = p.string() + ".tmp" + std::to_string(rd());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out << content;
        if (!out.flush()) throw IoError("cannot write " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, p, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot write " + p.string());
    }
}

inline GroupDefinition load_group(const std::filesystem::path& p) { return parse_group(read_file(p)); }

/// Content-addressed store of serialized results.
///
/// Location: $GARSIDE_CACHE_DIR, else $XDG_CACHE_HOME/garside, else
/// $HOME/.cache/garside.  Keys carry kFormatVersion, so bumping it orphans
/// old entries.  Failures to write are ignored: the cache is an optimization.
class ResultCache {
public:
    static constexpr int kFormatVersion = 1;

    static std::optional<std::filesystem::path> default_dir() {
        if (const char* d = std::getenv("GARSIDE_CACHE_DIR"); d && *d) return std::filesystem::path(d);
        if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::filesystem::path(x) / "garside";
        if (const char* h = std::getenv("HOME"); h && *h) return std::filesystem::path(h) / ".cache" / "garside";
        return std::nullopt;
    }

    ResultCache() = default;  // disabled
    explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    bool enabled() const { return dir_.has_value(); }

    /// Key from the group and a description of the computation.
    static std::string key(const CoxeterMatrix& m, const std::string& computation) {
        std::uint64_t h = 1469598103934665603ull;
        for (unsigned char c : computation) {
            h ^= c;
            h *= 1099511628211ull;
        }
        return "v" + std::to_string(kFormatVersion) + "-" + hash_hex(matrix_hash(m)) + "-" + hash_hex(h);
    }

    std::optional<std::string> get(const std::string& key) const {
        if (!dir_) return std::nullopt;
        const auto p = *dir_ / key;
        std::error_code ec;
        if (!std::filesystem::is_regular_file(p, ec)) return std::nullopt;
        try {
            return read_file(p);
        } catch (const IoError&) {
            return std::nullopt;
        }
    }

    void put(const std::string& key, const std::string& payload) const {
        if (!dir_) return;
        std::error_code ec;
        std::filesystem::create_directories(*dir_, ec);
        try {
            write_file_atomic(*dir_ / key, payload);
        } catch (const IoError&) {
        }
    }

private:
    std::optional<std::filesystem::path> dir_;
};

/// FNV-1a of arbitrary text, hex.
inline std::string content_hash(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return hash_hex(h);
}

}  // namespace garside
