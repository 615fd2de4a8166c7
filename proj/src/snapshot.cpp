#include "swlw/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace swlw {

namespace {

static_assert(std::endian::native == std::endian::little,
              "snapshot payload is little-endian; big-endian hosts unsupported");

struct FieldRef {
    const char* name;
    const std::vector<double>* data;
};

std::vector<FieldRef> field_table(const SimState& s) {
    return {
        {"rho", &s.rho.v},
        {"u1", &s.u.c1},
        {"u2", &s.u.c2},
        {"H1", &s.H.c1},
        {"H2", &s.H.c2},
        {"disp1", &s.map.disp.c1},
        {"disp2", &s.map.disp.c2},
        {"xp1", &s.map.xp1},
        {"xp2", &s.map.xp2},
        {"E11", &s.map.defgrad.a11},
        {"E12", &s.map.defgrad.a12},
        {"E21", &s.map.defgrad.a21},
        {"E22", &s.map.defgrad.a22},
        {"B11", &s.map.inv_defgrad.a11},
        {"B12", &s.map.inv_defgrad.a12},
        {"B21", &s.map.inv_defgrad.a21},
        {"B22", &s.map.inv_defgrad.a22},
        {"jtilde", &s.map.jtilde},
    };
}

std::vector<double*> field_table_mut(SimState& s) {
    std::vector<double*> out;
    for (auto& f : field_table(s)) out.push_back(const_cast<double*>(f.data->data()));
    return out;
}

} // namespace

void write_snapshot(const std::string& path, const SimState& state) {
    const std::size_t n2 = state.rho.grid.size();
    auto fields = field_table(state);

    nlohmann::json header;
    header["schema"] = 1;
    header["n"] = state.rho.grid.n;
    header["time"] = state.t;
    header["endianness"] = "LE";
    nlohmann::json list = nlohmann::json::array();
    std::size_t offset = 0;
    auto add = [&](const char* name, std::size_t count) {
        list.push_back({{"name", name}, {"offset", offset}, {"count", count}});
        offset += count * sizeof(double);
    };
    for (const auto& f : fields) add(f.name, f.data->size());
    add("psi_re", n2);
    add("psi_im", n2);
    header["fields"] = list;
    header["payload_bytes"] = offset;

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open snapshot for writing: " + path);
    out << header.dump() << "\n";
    for (const auto& f : fields)
        out.write(reinterpret_cast<const char*>(f.data->data()),
                  std::streamsize(f.data->size() * sizeof(double)));
    std::vector<double> re(n2), im(n2);
    for (std::size_t i = 0; i < n2; ++i) {
        re[i] = state.psi.v[i].real();
        im[i] = state.psi.v[i].imag();
    }
    out.write(reinterpret_cast<const char*>(re.data()), std::streamsize(n2 * sizeof(double)));
    out.write(reinterpret_cast<const char*>(im.data()), std::streamsize(n2 * sizeof(double)));
    if (!out) throw std::runtime_error("snapshot write failed: " + path);
}

SimState read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open snapshot: " + path);
    std::string header_line;
    if (!std::getline(in, header_line)) throw std::runtime_error("snapshot missing header");
    nlohmann::json header = nlohmann::json::parse(header_line);
    if (header.at("schema").get<int>() != 1)
        throw std::runtime_error("snapshot: unsupported schema");
    if (header.at("endianness").get<std::string>() != "LE")
        throw std::runtime_error("snapshot: unsupported endianness marker");

    const int n = header.at("n").get<int>();
    Grid g = Grid::make(n);
    SimState s;
    s.rho = ScalarField(g);
    s.u = VectorField(g);
    s.H = VectorField(g);
    s.psi = ComplexField(g);
    s.map = FlowMapState::identity(g);
    s.t = header.at("time").get<double>();

    const std::size_t payload_bytes = header.at("payload_bytes").get<std::size_t>();
    std::vector<char> payload(payload_bytes);
    in.read(payload.data(), std::streamsize(payload_bytes));
    if (std::size_t(in.gcount()) != payload_bytes)
        throw std::runtime_error("snapshot: truncated payload");

    auto mut = field_table_mut(s);
    auto names = field_table(s);
    std::vector<double> re(g.size()), im(g.size());
    for (const auto& fj : header.at("fields")) {
        const std::string name = fj.at("name").get<std::string>();
        const std::size_t offset = fj.at("offset").get<std::size_t>();
        const std::size_t count = fj.at("count").get<std::size_t>();
        if (offset + count * sizeof(double) > payload_bytes)
            throw std::runtime_error("snapshot: field overruns payload: " + name);
        double* dst = nullptr;
        if (name == "psi_re") dst = re.data();
        else if (name == "psi_im") dst = im.data();
        else {
            for (std::size_t k = 0; k < names.size(); ++k)
                if (name == names[k].name) dst = mut[k];
            if (!dst) throw std::runtime_error("snapshot: unknown field: " + name);
        }
        std::memcpy(dst, payload.data() + offset, count * sizeof(double));
    }
    for (std::size_t i = 0; i < g.size(); ++i) s.psi.v[i] = {re[i], im[i]};
    s.map.time = s.t;
    return s;
}

} // namespace swlw
