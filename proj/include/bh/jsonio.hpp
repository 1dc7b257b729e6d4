#ifndef BH_JSONIO_HPP
#define BH_JSONIO_HPP

#include <string>

#include "bh/instance.hpp"
#include "bh/solvers.hpp"
#include "bh/validate.hpp"

#include <json.hpp>

namespace bh {

using nlohmann::json;

json to_json(const Instance& inst);
Instance instance_from_json(const json& j);

json to_json(const Path& path, int n);
Path path_from_json(const json& j);

json to_json(const CertReport& rep);
json to_json(const ValidationReport& rep);

Instance load_instance(const std::string& file);
Path load_path(const std::string& file);
void save_json(const std::string& file, const json& j);

} // namespace bh

#endif
