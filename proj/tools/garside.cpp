// garside: Garside shadows, voracious languages and their automata from the
// command line.
//
// Exit codes: 0 success, 1 usage / parse / I/O error, 2 shadow validation or
// mismatch, 3 a verification check failed.  Errors are one line on stderr:
//     garside: <category>: <message>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "garside/garside.hpp"

using namespace garside;

namespace {

enum Exit { kOk = 0, kInput = 1, kShadow = 2, kVerify = 3 };

struct Failure {
    Exit code;
    std::string category;
    std::string message;
};

struct Options {
    std::string group;
    std::string shadow;
    std::string kind = "low";
    std::string seed;
    std::size_t cutoff = 16;
    std::string format = "dot";
    std::string out;
    std::string word;
    std::size_t radius = 6;
    std::size_t max_len = 6;
    bool no_cache = false;
};

std::string one_line(std::string s) {
    for (char& c : s)
        if (c == '\n' || c == '\r') c = ' ';
    return s;
}

GroupDefinition group_or_fail(const Options& o) {
    try {
        return load_group(o.group);
    } catch (const IoError& e) {
        throw Failure{kInput, "io-error", e.what()};
    } catch (const GroupFileError& e) {
        throw Failure{kInput, "parse-error", o.group + ": " + e.what()};
    }
}

GarsideShadow shadow_or_fail(const CoxeterSystem& W, const Options& o) {
    std::string text;
    try {
        text = read_file(o.shadow);
    } catch (const IoError& e) {
        throw Failure{kInput, "io-error", e.what()};
    }
    try {
        return deserialize_shadow(W, text);
    } catch (const ShadowFormatError& e) {
        throw Failure{kInput, "parse-error", o.shadow + ": " + e.what()};
    } catch (const ShadowMismatch& e) {
        throw Failure{kShadow, "shadow-mismatch", o.shadow + ": " + e.what()};
    }
}

ResultCache cache_for(const Options& o) {
    if (o.no_cache) return {};
    auto dir = ResultCache::default_dir();
    return dir ? ResultCache(*dir) : ResultCache();
}

void emit(const Options& o, const std::string& payload) {
    if (o.out.empty() || o.out == "-") {
        std::cout << payload;
        std::cout.flush();
        return;
    }
    try {
        write_file_atomic(o.out, payload);
    } catch (const IoError& e) {
        throw Failure{kInput, "io-error", e.what()};
    }
}

/// Computes `make()` or fetches it from the cache under `what`.
template <class F>
std::string cached(const Options& o, const CoxeterMatrix& m, const std::string& what, F make) {
    const ResultCache cache = cache_for(o);
    const std::string key = ResultCache::key(m, what);
    if (auto hit = cache.get(key)) return *hit;
    std::string payload = make();
    cache.put(key, payload);
    return payload;
}

int cmd_shadow(const Options& o) {
    const GroupDefinition def = group_or_fail(o);
    CoxeterSystem W(def.matrix);
    ShadowKind kind;
    try {
        kind = parse_shadow_kind(o.kind);
    } catch (const std::invalid_argument& e) {
        throw Failure{kInput, "usage-error", e.what()};
    }
    if (kind.provenance == Provenance::Explicit)
        throw Failure{kInput, "usage-error", "kind explicit is only produced by loading a shadow file"};
    std::string what = "shadow " + to_string(kind);
    std::vector<Element> seed;
    if (kind.provenance == Provenance::Closure) {
        if (!o.seed.empty()) {
            std::string text;
            try {
                text = read_file(o.seed);
            } catch (const IoError& e) {
                throw Failure{kInput, "io-error", e.what()};
            }
            std::istringstream is(text);
            std::size_t lineno = 0;
            for (std::string line; std::getline(is, line);) {
                ++lineno;
                line = line.substr(0, line.find('#'));
                const auto b = line.find_first_not_of(" \t\r");
                if (b == std::string::npos) continue;
                line = line.substr(b, line.find_last_not_of(" \t\r") - b + 1);
                try {
                    seed.push_back(W.element(line));
                } catch (const std::invalid_argument& e) {
                    throw Failure{kInput, "parse-error",
                                  o.seed + ": line " + std::to_string(lineno) + ": " + e.what()};
                }
            }
        }
        std::sort(seed.begin(), seed.end());
        what += " cutoff " + std::to_string(o.cutoff);
        for (Element g : seed) what += " " + W.format(g);
    }
    const std::string payload = cached(o, def.matrix, what, [&] {
        if (kind.provenance == Provenance::Closure) {
            try {
                return serialize_shadow(garside_closure(W, seed, o.cutoff));
            } catch (const CutoffExceeded& e) {
                throw Failure{kShadow, "cutoff-exceeded", e.what()};
            }
        }
        return serialize_shadow(shadow_from_gates(W, kind));
    });
    emit(o, payload);
    return kOk;
}

int cmd_automaton(const Options& o) {
    if (o.format != "dot" && o.format != "text")
        throw Failure{kInput, "usage-error", "format must be dot or text, not '" + o.format + "'"};
    const GroupDefinition def = group_or_fail(o);
    CoxeterSystem W(def.matrix);
    const GarsideShadow B = shadow_or_fail(W, o);
    const std::string what = "automaton " + o.format + " " + content_hash(serialize_shadow(B));
    emit(o, cached(o, def.matrix, what, [&] {
             const Automaton A = build_voracious_fsa(B);
             return o.format == "dot" ? to_dot(A, W, "voracious") : to_text(A, W);
         }));
    return kOk;
}

int cmd_language(const Options& o) {
    const GroupDefinition def = group_or_fail(o);
    CoxeterSystem W(def.matrix);
    const GarsideShadow B = shadow_or_fail(W, o);
    const std::string what = "language " + std::to_string(o.max_len) + " " + content_hash(serialize_shadow(B));
    emit(o, cached(o, def.matrix, what, [&] {
             std::string s;
             for (const Word& w : enumerate_language(B, o.max_len).words()) s += W.format_word(w) + "\n";
             return s;
         }));
    return kOk;
}

int cmd_verify(const Options& o) {
    const GroupDefinition def = group_or_fail(o);
    CoxeterSystem W(def.matrix);
    const GarsideShadow B = shadow_or_fail(W, o);
    const std::string what = "verify " + std::to_string(o.radius) + " " + content_hash(serialize_shadow(B));
    const std::string report = cached(o, def.matrix, what, [&] { return full_suite(B, o.radius).to_text(); });
    emit(o, report);
    if (report.find("\noverall PASS\n") == std::string::npos)
        throw Failure{kVerify, "verify-failed", "at least one check failed, see the report"};
    return kOk;
}

int cmd_project(const Options& o) {
    const GroupDefinition def = group_or_fail(o);
    CoxeterSystem W(def.matrix);
    const GarsideShadow B = shadow_or_fail(W, o);
    Element g;
    try {
        g = W.element(o.word);
    } catch (const std::invalid_argument& e) {
        throw Failure{kInput, "parse-error", e.what()};
    }
    std::ostringstream os;
    os << "element " << W.format(g) << "\n";
    os << "projection " << W.format(B.project(g)) << "\n";
    os << "voracious " << W.format(voracious_projection(B, g)) << "\n";
    os << "chain";
    for (Element x : voracious_chain(B, g).chain) os << ' ' << W.format(x);
    os << "\n";
    emit(o, os.str());
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Garside shadows, voracious languages and automata for Coxeter groups"};
    app.require_subcommand(1);
    Options o;

    auto group_opt = [&](CLI::App* c) { c->add_option("--group", o.group, "group definition file")->required(); };
    auto shadow_opt = [&](CLI::App* c) { c->add_option("--shadow", o.shadow, "shadow file")->required(); };
    auto common = [&](CLI::App* c) {
        c->add_option("--out", o.out, "output path (default: stdout)");
        c->add_flag("--no-cache", o.no_cache, "neither read nor write the result cache");
    };

    auto* shadow = app.add_subcommand("shadow", "compute a Garside shadow");
    group_opt(shadow);
    shadow->add_option("--kind", o.kind, "low | mlow=M | gamma | closure")->capture_default_str();
    shadow->add_option("--seed", o.seed, "seed words for --kind closure, one per line");
    shadow->add_option("--cutoff", o.cutoff, "search radius for --kind closure")->capture_default_str();
    common(shadow);

    auto* automaton = app.add_subcommand("automaton", "export the automaton of a shadow");
    group_opt(automaton);
    shadow_opt(automaton);
    automaton->add_option("--format", o.format, "dot | text")->capture_default_str();
    common(automaton);

    auto* language = app.add_subcommand("language", "list voracious words up to a length");
    group_opt(language);
    shadow_opt(language);
    language->add_option("--max-len", o.max_len, "longest word")->capture_default_str();
    common(language);

    auto* verify = app.add_subcommand("verify", "run every ball check on a shadow");
    group_opt(verify);
    shadow_opt(verify);
    verify->add_option("--radius", o.radius, "ball radius")->capture_default_str();
    common(verify);

    auto* project = app.add_subcommand("project", "projections and voracious chain of one word");
    group_opt(project);
    shadow_opt(project);
    project->add_option("--word", o.word, "word over the generators ('-' for id)")->required();
    common(project);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "garside: usage-error: " << one_line(e.what()) << "\n";
        return kInput;
    }

    try {
        if (*shadow) return cmd_shadow(o);
        if (*automaton) return cmd_automaton(o);
        if (*language) return cmd_language(o);
        if (*verify) return cmd_verify(o);
        if (*project) return cmd_project(o);
    } catch (const Failure& f) {
        std::cerr << "garside: " << f.category << ": " << one_line(f.message) << "\n";
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << "garside: internal-error: " << one_line(e.what()) << "\n";
        return kShadow;
    }
    return kInput;
}
