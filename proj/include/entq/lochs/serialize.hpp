#pragma once
#include <string>

#include <json.hpp>

#include "entq/lochs/series.hpp"

namespace entq {

const char* to_string(AgreementStatus s);
const char* to_string(HitType t);

// CSV with header n,m,ell,jump,type; ell and type are empty when not defined.
std::string to_csv(const MSeries& series);
std::string to_csv(const JumpStats& stats);

nlohmann::ordered_json to_json(const MSeries& series);
nlohmann::ordered_json to_json(const JumpStats& stats);

}  // namespace entq
