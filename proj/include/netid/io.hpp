#ifndef NETID_IO_HPP
#define NETID_IO_HPP

// JSON encodings of transfer functions, network description files and
// concrete-model files. All indices in files are 1-based.

#include "netid/model.hpp"
#include "netid/ratfunc.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string_view>

namespace netid {

using json = nlohmann::json;

/// {"num": [...], "den": [...]}, coefficients as canonical rational strings
/// in descending powers. Zero numerator is [].
json tf_to_json(const TransferFunction& t);
TransferFunction tf_from_json(const json& j);

/// Throws ParseError carrying the byte offset of the failure.
json parse_json(std::string_view text);
json read_json_file(const std::filesystem::path& path);

/// Parameters get ids 1, 2, ... in file order (G, then R, then H). Only the
/// file's shape is checked here; structural rules are left to
/// validate_model_set.
NetworkModelSet model_set_from_json(const json& j);
json model_set_to_json(const NetworkModelSet& m);

ConcreteModel concrete_model_from_json(const NetworkModelSet& base, const json& j);
json concrete_model_to_json(const ConcreteModel& c);

NetworkModelSet load_model_set(const std::filesystem::path& path);
ConcreteModel load_concrete_model(const NetworkModelSet& base, const std::filesystem::path& path);

} // namespace netid

#endif
