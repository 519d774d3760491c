#include "pplag/instance_io.hpp"

#include "pplag/matrix_io.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>

namespace pplag {

namespace fs = std::filesystem;
using nlohmann::json;

void save_instance(const fs::path& dir, const LcqpInstance& inst) {
    fs::create_directories(dir);

    write_matrix_market(dir / "Q.mtx", inst.Q);
    write_matrix_market(dir / "A.mtx", inst.A);
    write_vector(dir / "r.txt", inst.r);
    write_vector(dir / "b.txt", inst.b);

    const Eigen::Index n = inst.Q.rows();
    Vector box(2 * n);
    box.head(n) = inst.box.lower;
    box.tail(n) = inst.box.upper;
    write_vector(dir / "box.txt", box);

    json meta;
    meta["schema_version"] = kSchemaVersion;
    meta["generator_version"] = kGeneratorVersion;
    meta["n"] = n;
    meta["m"] = inst.A.rows();
    meta["seed"] = inst.seed;
    meta["lipschitz"] = lipschitz_constant(inst.Q);
    meta["sigma_max"] = largest_singular_value(inst.A);

    std::ofstream out(dir / "meta.json");
    if (!out)
        throw std::runtime_error("cannot write " + (dir / "meta.json").string());
    out << meta.dump(2) << "\n";
}

LcqpInstance load_instance(const fs::path& dir) {
    std::ifstream metain(dir / "meta.json");
    if (!metain)
        throw std::runtime_error("cannot read " + (dir / "meta.json").string());
    json meta = json::parse(metain);

    LcqpInstance inst;
    inst.Q = read_matrix_market(dir / "Q.mtx");
    inst.A = read_matrix_market(dir / "A.mtx");
    inst.r = read_vector(dir / "r.txt");
    inst.b = read_vector(dir / "b.txt");
    inst.seed = meta.at("seed").get<std::uint64_t>();

    const auto n = meta.at("n").get<Eigen::Index>();
    const auto m = meta.at("m").get<Eigen::Index>();
    if (inst.Q.rows() != n || inst.Q.cols() != n || inst.A.rows() != m ||
        inst.A.cols() != n || inst.r.size() != n || inst.b.size() != m)
        throw std::runtime_error("instance files disagree with meta.json in " +
                                 dir.string());

    Vector box = read_vector(dir / "box.txt");
    if (box.size() != 2 * n)
        throw std::runtime_error("box.txt must hold n lowers then n uppers: " +
                                 (dir / "box.txt").string());
    inst.box.lower = box.head(n);
    inst.box.upper = box.tail(n);
    return inst;
}

}  // namespace pplag
