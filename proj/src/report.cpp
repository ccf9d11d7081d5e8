#include "planarlie/report.hpp"

#include "planarlie/errors.hpp"
#include "planarlie/expr.hpp"

namespace planarlie {

using nlohmann::json;

json scalar_json(const GaussianRational& v) { return v.str(); }

json fingerprint_json(const InvariantFingerprint& fp) {
    json j;
    j["dimension"] = fp.dim;
    j["derived_series_dims"] = fp.derived_dims;
    j["lower_central_series_dims"] = fp.lcs_dims;
    j["abelian"] = fp.abelian;
    j["nilpotent"] = fp.nilpotent;
    j["solvable"] = fp.solvable;
    j["center_dim"] = fp.center_dim;
    j["rank"] = fp.rank_g;
    j["derived_rank"] = fp.rank_derived;
    j["derived_abelian"] = fp.derived_abelian;
    j["quotient_dim"] = fp.quotient_dim;
    switch (fp.ad_op) {
        case InvariantFingerprint::AdOp::none:
            j["ad_operator"] = nullptr;
            break;
        case InvariantFingerprint::AdOp::dy:
            j["ad_operator"] = "Dy";
            break;
        case InvariantFingerprint::AdOp::x_dx_plus_dy:
            j["ad_operator"] = "x*Dx + Dy";
            break;
    }
    json spec = json::array();
    for (const auto& [l, n] : fp.ad_spectrum)
        spec.push_back({{"eigenvalue", l.str()}, {"multiplicity", n}});
    j["ad_spectrum"] = spec;
    return j;
}

json family_json(const CanonicalFamily& fam) {
    json j;
    j["tag"] = family_tag(fam);
    if (const auto* n = std::get_if<NilpotentNonAbelian>(&fam)) {
        j["N"] = n->n;
    } else if (const auto* f = std::get_if<NonAbelianDerivedFull>(&fam)) {
        j["k"] = f->k;
    } else if (const auto* l = std::get_if<NonAbelianDerivedLine>(&fam)) {
        j["k"] = l->k;
        j["a"] = l->a.str();
    } else if (const auto* r = std::get_if<Rank2Abelian>(&fam)) {
        j["subtype"] = r->subtype;
        if (r->subtype >= 3) j["lambda"] = r->lambda.str();
    } else if (const auto* r1 = std::get_if<Rank1Solvable>(&fam)) {
        json phis = json::array();
        for (const ExpPoly& phi : r1->phis) phis.push_back(phi.str());
        j["phis"] = phis;
    } else if (const auto* s = std::get_if<SpectralType>(&fam)) {
        j["variant"] = s->variant;
        json spec = json::array();
        for (const auto& [l, n] : s->spectrum)
            spec.push_back({{"eigenvalue", l.str()}, {"multiplicity", n}});
        j["spectrum"] = spec;
    }
    return j;
}

json transform_json(const PointTransform& t) {
    json moves = json::array();
    for (const Move& m : t.moves()) {
        if (const ShearX* s = std::get_if<ShearX>(&m)) {
            moves.push_back({{"op", "shear_x"}, {"alpha", s->alpha.str()}, {"f", s->f.str()}});
        } else if (const AffineY* a = std::get_if<AffineY>(&m)) {
            moves.push_back({{"op", "affine_y"}, {"beta", a->beta.str()}, {"c", a->c.str()}});
        } else {
            moves.push_back({{"op", "swap"}});
        }
    }
    return moves;
}

PointTransform transform_from_json(const json& j) {
    if (!j.is_array()) throw Error("transform chain must be a JSON array");
    PointTransform t;
    for (const json& m : j) {
        std::string op = m.at("op").get<std::string>();
        if (op == "shear_x") {
            GaussianRational alpha = parse_scalar(m.at("alpha").get<std::string>());
            ExpPoly f = parse_scalar_poly(m.at("f").get<std::string>());
            t.then(ShearX{alpha, f});
        } else if (op == "affine_y") {
            GaussianRational beta = parse_scalar(m.at("beta").get<std::string>());
            GaussianRational c = parse_scalar(m.at("c").get<std::string>());
            t.then(AffineY{beta, c});
        } else if (op == "swap") {
            t.then(SwapXY{});
        } else {
            throw Error("unknown transform op '" + op + "'");
        }
    }
    return t;
}

json Report::to_json(bool with_timing) const {
    json j;
    j["input"] = {{"path", input_path}, {"fields", fields}};
    j["closure"] = closure;
    if (!fingerprint.is_null()) j["fingerprint"] = fingerprint;
    if (!classification.is_null()) j["classification"] = classification;
    j["diagnostics"] = diagnostics;
    if (with_timing) j["timing_ms"] = timing_ms;
    return j;
}

std::string Report::text() const {
    std::string out;
    out += "input: " + input_path + "\n";
    for (const std::string& f : fields) out += "  " + f + "\n";
    out += "closed: " + std::string(closed ? "yes" : "no") + "\n";
    if (closed) out += "dimension: " + std::to_string(dimension) + "\n";
    if (closed && closure.contains("brackets")) {
        out += "nonzero brackets:\n";
        for (const json& row : closure["brackets"]) {
            std::string line = "  [e" + std::to_string(row["i"].get<int>()) + ", e" +
                               std::to_string(row["j"].get<int>()) + "] =";
            const json& coords = row["coords"];
            bool any = false;
            for (std::size_t k = 0; k < coords.size(); ++k) {
                std::string c = coords[k].get<std::string>();
                if (c == "0") continue;
                line += std::string(any ? " + " : " ") + "(" + c + ")*e" + std::to_string(k + 1);
                any = true;
            }
            out += line + "\n";
        }
    }
    if (!fingerprint.is_null()) {
        out += "fingerprint:\n";
        for (auto it = fingerprint.begin(); it != fingerprint.end(); ++it)
            out += "  " + it.key() + ": " + it.value().dump() + "\n";
    }
    if (!classification.is_null()) out += "classification: " + classification.dump(2) + "\n";
    for (const std::string& d : diagnostics) out += "note: " + d + "\n";
    return out;
}

}  // namespace planarlie
