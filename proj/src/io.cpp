#include "gsums/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gsums {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("invalid JSON");
    return j;
}

QmodZ fraction(const json& j) {
    if (j.is_number_integer()) return QmodZ::of(j.get<i64>(), 1);
    if (!j.is_string()) throw ParseError("expected a fraction string");
    return QmodZ::parse(j.get<std::string>());
}

} // namespace

std::string form_to_json(const TwoLinearForm& psi) {
    json j;
    j["group"]["orders"] = psi.group().orders();
    json gv = json::array();
    for (const auto& [vp, vm] : psi.genvals()) gv.push_back({vp.str(), vm.str()});
    j["genvals"] = gv;
    json gram = json::array();
    for (const auto& row : psi.gram()) {
        json r = json::array();
        for (const QmodZ& v : row) r.push_back(v.str());
        gram.push_back(r);
    }
    j["gram"] = gram;
    return j.dump();
}

TwoLinearForm form_from_json(const std::string& text) {
    json j = parse(text);
    if (!j.contains("group") || !j["group"].contains("orders"))
        throw ParseError("missing group.orders");
    FinAbGroup t = FinAbGroup::of(j["group"]["orders"].get<std::vector<i64>>());
    if (!j.contains("genvals") || !j.contains("gram")) throw ParseError("missing genvals or gram");
    std::vector<std::array<QmodZ, 2>> genvals;
    for (const json& pair : j["genvals"]) {
        if (!pair.is_array() || pair.size() != 2) throw ParseError("genvals entries are pairs");
        genvals.push_back({fraction(pair[0]), fraction(pair[1])});
    }
    std::vector<std::vector<QmodZ>> gram;
    for (const json& row : j["gram"]) {
        std::vector<QmodZ> r;
        for (const json& v : row) r.push_back(fraction(v));
        gram.push_back(std::move(r));
    }
    return TwoLinearForm::build(std::move(t), std::move(genvals), std::move(gram));
}

std::string cycsum_to_json(const CycSum& g) {
    json j;
    j["level"] = g.level();
    j["coeffs"] = g.coeffs();
    return j.dump();
}

IntSymMatrix matrix_from_text(const std::string& text) {
    std::istringstream in(text);
    i64 n;
    if (!(in >> n) || n < 0) throw ParseError("expected matrix size");
    std::vector<std::vector<i64>> e(n, std::vector<i64>(n));
    for (i64 i = 0; i < n; ++i)
        for (i64 j = 0; j < n; ++j)
            if (!(in >> e[i][j])) throw ParseError("matrix entry missing");
    return IntSymMatrix::of(std::move(e));
}

std::string matrix_to_text(const IntSymMatrix& m) {
    std::ostringstream out;
    out << m.size() << "\n";
    for (int i = 0; i < m.size(); ++i) {
        for (int j = 0; j < m.size(); ++j) out << (j ? " " : "") << m.at(i, j);
        out << "\n";
    }
    return out.str();
}

std::string decomposition_to_json(const ReducedDecomposition& d) {
    json j;
    j["p"] = d.p;
    j["r"] = d.r;
    json layers = json::array();
    for (const auto& layer : d.layers) {
        json jl;
        jl["i"] = layer.i;
        json blocks = json::array();
        for (const auto& bl : layer.blocks) {
            if (bl.kind == ReducedBlock::Kind::Diagonal)
                blocks.push_back({{"diag", bl.a}});
            else
                blocks.push_back({{"hyp", {bl.m1, bl.m2}}});
        }
        jl["blocks"] = blocks;
        layers.push_back(jl);
    }
    j["layers"] = layers;
    j["witness"] = d.witness;
    return j.dump();
}

PsiDecomposition psi_decomposition_from_json(const std::string& text) {
    json j = parse(text);
    PsiDecomposition d;
    if (!j.contains("p") || !j.contains("layers")) throw ParseError("missing p or layers");
    d.p = j["p"].get<i64>();
    for (const json& jl : j["layers"]) {
        if (!jl.contains("j") || !jl.contains("matrix")) throw ParseError("layer needs j and matrix");
        d.layers.emplace_back(jl["j"].get<int>(),
                              IntSymMatrix::of(jl["matrix"].get<std::vector<std::vector<i64>>>()));
    }
    return d;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace gsums
