#include "entq/lochs/serialize.hpp"

namespace entq {

const char* to_string(AgreementStatus s) {
    switch (s) {
        case AgreementStatus::Separated: return "separated";
        case AgreementStatus::CapReached: return "cap-reached";
        default: return "precision-exhausted";
    }
}

const char* to_string(HitType t) {
    switch (t) {
        case HitType::Type1: return "TYPE1";
        case HitType::Type2: return "TYPE2";
        default: return "";
    }
}

std::string to_csv(const MSeries& series) {
    std::string out = "n,m,ell,jump,type\n";
    for (const auto& r : series.rows) {
        out += std::to_string(r.n);
        out += ',';
        out += std::to_string(r.m);
        out += ',';
        if (r.ell >= 0) out += std::to_string(r.ell);
        out += ',';
        out += r.jump ? '1' : '0';
        out += ',';
        out += to_string(r.hit);
        out += '\n';
    }
    return out;
}

std::string to_csv(const JumpStats& stats) {
    std::string out = "k,n,v,type\n";
    for (std::size_t i = 0; i < stats.times.size(); ++i) {
        out += std::to_string(i + 1);
        out += ',';
        out += std::to_string(stats.times[i]);
        out += ',';
        out += std::to_string(stats.hangs[i]);
        out += ',';
        out += to_string(stats.types[i]);
        out += '\n';
    }
    return out;
}

nlohmann::ordered_json to_json(const MSeries& series) {
    nlohmann::ordered_json j;
    j["radix_pair"] = series.radix_pair;
    j["g"] = series.radix_pair ? nlohmann::ordered_json(series.g) : nullptr;
    j["h"] = series.radix_pair ? nlohmann::ordered_json(series.h) : nullptr;
    j["capped"] = series.capped;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : series.rows) {
        nlohmann::ordered_json o;
        o["n"] = r.n;
        o["m"] = r.m;
        o["ell"] = r.ell >= 0 ? nlohmann::ordered_json(r.ell) : nullptr;
        o["jump"] = r.jump;
        o["type"] = r.hit == HitType::None ? nlohmann::ordered_json(nullptr)
                                           : nlohmann::ordered_json(to_string(r.hit));
        rows.push_back(std::move(o));
    }
    j["rows"] = std::move(rows);
    return j;
}

nlohmann::ordered_json to_json(const JumpStats& stats) {
    nlohmann::ordered_json j;
    j["times"] = stats.times;
    j["hangs"] = stats.hangs;
    auto types = nlohmann::ordered_json::array();
    for (HitType t : stats.types)
        types.push_back(t == HitType::None ? nlohmann::ordered_json(nullptr)
                                           : nlohmann::ordered_json(to_string(t)));
    j["types"] = std::move(types);
    return j;
}

}  // namespace entq
