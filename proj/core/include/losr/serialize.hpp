#pragma once

#include <json.hpp>

#include "losr/freeset.hpp"
#include "losr/game.hpp"

namespace losr {

using nlohmann::json;

// Matrices: {"rows","cols","re":[...],"im":[...]} row-major.
json to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

// Systems as "<kind>:<dim>" with kind in {I,C,Q}.
std::string system_to_string(const System& s);
System system_from_string(const std::string& s);

json to_json(const PartyWiring& w);
PartyWiring wiring_from_json(const json& j);

json to_json(const ChoiOperator& c);
ChoiOperator choi_from_json(const json& j);

json to_json(const Resource& r);
Resource resource_from_json(const json& j);

// Boxes: {"P": P[x][y][a][b]}.
json to_json(const CorrelationTable& t);
CorrelationTable box_from_json(const json& j);

// Assemblages: {"sigma": [[matrix,...],...]} indexed [x][a].
json to_json(const Assemblage& a);
Assemblage assemblage_from_json(const json& j);

json to_json(const LosrTransform& t);
LosrTransform transform_from_json(const json& j);

json to_json(const Game& g);
Game game_from_json(const json& j);

json to_json(const MembershipReport& r);

json load_json(const std::string& path);
void save_json(const std::string& path, const json& j);

}  // namespace losr
