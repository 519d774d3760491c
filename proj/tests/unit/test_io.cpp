#include <doctest.h>

#include "pplag/instance_io.hpp"
#include "pplag/matrix_io.hpp"
#include "pplag/rng.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

using namespace pplag;
namespace fs = std::filesystem;

namespace {

// fresh scratch directory per test case, removed on destruction
struct TempDir {
    fs::path path;
    explicit TempDir(const char* tag) {
        path = fs::temp_directory_path() /
               (std::string("pplag_io_") + tag + "_" +
                std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("matrix round trip is exact") {
    TempDir tmp("mat");
    NormalSampler s(1);
    Matrix m(7, 3);
    s.fill_row_major(m);
    m *= 1e3;  // exercise magnitudes where 17 digits matter

    const fs::path file = tmp.path / "m.mtx";
    write_matrix_market(file, m);
    CHECK(read_matrix_market(file) == m);

    // header is the dense array flavor
    std::ifstream in(file);
    std::string first;
    std::getline(in, first);
    CHECK(first == "%%MatrixMarket matrix array real general");
}

TEST_CASE("vector round trip is exact") {
    TempDir tmp("vec");
    NormalSampler s(2);
    Vector v(11);
    s.fill(v);
    const fs::path file = tmp.path / "v.txt";
    write_vector(file, v);
    CHECK(read_vector(file) == v);
}

TEST_CASE("matrix reader rejects junk") {
    TempDir tmp("rej");
    CHECK_THROWS(read_matrix_market(tmp.path / "missing.mtx"));

    const fs::path bad = tmp.path / "bad.mtx";
    {
        std::ofstream out(bad);
        out << "%%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 2.0\n";
    }
    CHECK_THROWS(read_matrix_market(bad));

    const fs::path trunc = tmp.path / "trunc.mtx";
    {
        std::ofstream out(trunc);
        out << "%%MatrixMarket matrix array real general\n2 2\n1.0\n2.0\n";
    }
    CHECK_THROWS(read_matrix_market(trunc));
}

TEST_CASE("instance save/load round trip") {
    TempDir tmp("inst");
    const LcqpInstance inst = generate_lcqp({5, 2, 31, 0.0, 5.0});
    save_instance(tmp.path / "a", inst);

    const LcqpInstance back = load_instance(tmp.path / "a");
    CHECK(back.Q == inst.Q);
    CHECK(back.r == inst.r);
    CHECK(back.A == inst.A);
    CHECK(back.b == inst.b);
    CHECK(back.box.lower == inst.box.lower);
    CHECK(back.box.upper == inst.box.upper);
    CHECK(back.seed == inst.seed);
}

TEST_CASE("meta.json carries dimensions, seed and spectral constants") {
    TempDir tmp("meta");
    const LcqpInstance inst = generate_lcqp({5, 2, 31, 0.0, 5.0});
    save_instance(tmp.path / "a", inst);

    std::ifstream in(tmp.path / "a" / "meta.json");
    const nlohmann::json meta = nlohmann::json::parse(in);
    CHECK(meta.at("n").get<int>() == 5);
    CHECK(meta.at("m").get<int>() == 2);
    CHECK(meta.at("seed").get<std::uint64_t>() == 31);
    CHECK(meta.at("schema_version").get<int>() == kSchemaVersion);
    CHECK(meta.at("generator_version").get<std::string>() ==
          kGeneratorVersion);

    // stored constants must match a recompute from the loaded data
    const LcqpInstance back = load_instance(tmp.path / "a");
    CHECK(std::abs(meta.at("lipschitz").get<double>() -
                   lipschitz_constant(back.Q)) <= 1e-10);
    CHECK(std::abs(meta.at("sigma_max").get<double>() -
                   largest_singular_value(back.A)) <= 1e-10);
}

TEST_CASE("saving the same instance twice gives identical bytes") {
    TempDir tmp("bytes");
    const LcqpInstance inst = generate_lcqp({4, 2, 8, 0.0, 5.0});
    save_instance(tmp.path / "a", inst);
    save_instance(tmp.path / "b", inst);
    for (const char* name :
         {"Q.mtx", "A.mtx", "r.txt", "b.txt", "box.txt", "meta.json"}) {
        CHECK(slurp(tmp.path / "a" / name) == slurp(tmp.path / "b" / name));
    }
}

TEST_CASE("load rejects inconsistent directories") {
    TempDir tmp("bad");
    const LcqpInstance inst = generate_lcqp({4, 2, 8, 0.0, 5.0});
    save_instance(tmp.path / "a", inst);

    // corrupt the box file: wrong number of entries
    write_vector(tmp.path / "a" / "box.txt", Vector::Zero(3));
    CHECK_THROWS(load_instance(tmp.path / "a"));
    CHECK_THROWS(load_instance(tmp.path / "nonexistent"));
}
