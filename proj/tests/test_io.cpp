#include <cstdlib>
#include <filesystem>

#include <unistd.h>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace garside;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& tag) {
    const fs::path p = fs::temp_directory_path() / ("garside-io-" + tag + "-" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string error_of(const std::string& text) {
    try {
        parse_group(text);
    } catch (const GroupFileError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(GroupFile, ParsesWithCommentsAndBlankLines) {
    const GroupDefinition g = parse_group(
        "# affine A2\n\nname: A2~\ngenerators: s t u   # ordered\nmatrix:\n1 3 3\n3 1 3\n\n3 3 1\n");
    EXPECT_EQ(g.name, "A2~");
    EXPECT_EQ(g.matrix.names(), (std::vector<std::string>{"s", "t", "u"}));
    EXPECT_EQ(g.matrix.label(0, 2), 3);
}

TEST(GroupFile, FormatRoundTrips) {
    const GroupDefinition g = parse_group("name: x\ngenerators: a b\nmatrix:\n1 0\n0 1\n");
    EXPECT_EQ(parse_group(format_group(g)).matrix, g.matrix);
    EXPECT_EQ(format_group(g), "name: x\ngenerators: a b\nmatrix:\n1 0\n0 1\n");
}

TEST(GroupFile, ShippedSamplesLoad) {
    for (const char* f : {"dinf.txt", "i2_3.txt", "i2_4.txt", "affine_a2.txt", "affine_a1xa1.txt", "triangle_334.txt"}) {
        const GroupDefinition g = load_group(fs::path(GARSIDE_GROUPS_DIR) / f);
        EXPECT_GE(g.matrix.rank(), 2u) << f;
    }
    const GroupDefinition tri = load_group(fs::path(GARSIDE_GROUPS_DIR) / "triangle_334.txt");
    for (const auto& n : testing_support::test_systems())
        if (n.name == "Tri334") EXPECT_EQ(tri.matrix, CoxeterMatrix(n.gens, n.labels));
}

TEST(GroupFile, ErrorsNameLineAndField) {
    EXPECT_EQ(error_of("generators: s t\nmatrix:\n1 3\n4 1\n"),
              "line 3, matrix row 1, column 2: matrix is not symmetric at cell (1,2)");
    EXPECT_EQ(error_of("generators: s t\nmatrix:\n1 3\n3\n"), "line 4, matrix row 2: expected 2 entries, found 1");
    EXPECT_EQ(error_of("generators: s t\nmatrix:\n1 3\n"), "line 3, matrix: expected 2 rows, found 1");
    EXPECT_EQ(error_of("generators: s t\nmatrix:\n1 7\n7 1\n").substr(0, 30), "line 3, matrix row 1, column 2");
    EXPECT_EQ(error_of("colour: red\n"), "line 1, colour: unknown key");
    EXPECT_EQ(error_of("matrix:\n1\n"), "line 2, generators: missing");
    EXPECT_EQ(error_of("generators: s s\nmatrix:\n1 3\n3 1\n").substr(0, 21), "line 1, generators: d");
    EXPECT_EQ(error_of("generators: - t\nmatrix:\n1 3\n3 1\n"), "line 1, generators: reserved generator name '-'");
    EXPECT_EQ(error_of("generators: s t\nmatrix:\n1 -3\n-3 1\n"), "line 3, matrix row 1, column 2: label '-3' out of range");
    EXPECT_EQ(error_of("generators: s t\nmatrix: 1 3\n"), "line 2, matrix: rows go on the following lines");
    EXPECT_EQ(error_of("what\n"), "line 1, line: expected 'key: value'");
}

TEST(Files, AtomicWriteAndRead) {
    const fs::path dir = scratch_dir("files");
    const fs::path p = dir / "out.txt";
    write_file_atomic(p, "one\n");
    write_file_atomic(p, "two\n");
    EXPECT_EQ(read_file(p), "two\n");
    std::size_t entries = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++entries;
    EXPECT_EQ(entries, 1u);
    EXPECT_THROW(read_file(dir / "missing"), IoError);
    EXPECT_THROW(write_file_atomic(dir / "no" / "such" / "dir", "x"), IoError);
    fs::remove_all(dir);
}

TEST(Cache, KeysAndStorage) {
    const fs::path dir = scratch_dir("cache");
    const ResultCache cache(dir);
    auto m = testing_support::make("I2_3");
    const std::string k1 = ResultCache::key(m->matrix(), "shadow low");
    const std::string k2 = ResultCache::key(m->matrix(), "shadow gamma");
    EXPECT_NE(k1, k2);
    EXPECT_EQ(k1.rfind("v1-", 0), 0u);
    EXPECT_EQ(k1, ResultCache::key(m->matrix(), "shadow low"));
    EXPECT_FALSE(cache.get(k1));
    cache.put(k1, "payload");
    EXPECT_EQ(cache.get(k1), "payload");

    const ResultCache off;
    EXPECT_FALSE(off.enabled());
    off.put(k1, "x");
    EXPECT_FALSE(off.get(k1));
    fs::remove_all(dir);
}

TEST(Cache, DefaultDirectoryFollowsEnvironment) {
    ::setenv("GARSIDE_CACHE_DIR", "/tmp/a", 1);
    EXPECT_EQ(ResultCache::default_dir(), fs::path("/tmp/a"));
    ::unsetenv("GARSIDE_CACHE_DIR");
    ::setenv("XDG_CACHE_HOME", "/tmp/x", 1);
    EXPECT_EQ(ResultCache::default_dir(), fs::path("/tmp/x/garside"));
    ::unsetenv("XDG_CACHE_HOME");
    ::setenv("HOME", "/tmp/h", 1);
    EXPECT_EQ(ResultCache::default_dir(), fs::path("/tmp/h/.cache/garside"));
}

TEST(ContentHash, StableAndSensitive) {
    EXPECT_EQ(content_hash("abc"), content_hash("abc"));
    EXPECT_NE(content_hash("abc"), content_hash("abd"));
    EXPECT_EQ(content_hash("").size(), 16u);
}
