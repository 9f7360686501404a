#include "netid/io.hpp"

#include "netid/error.hpp"

#include <fstream>
#include <iterator>
#include <set>
#include <utility>

namespace netid {

namespace {

const json& field(const json& j, const char* key, const char* where)
{
    if (!j.is_object() || !j.contains(key))
        throw InvalidInput(std::string(where) + ": missing \"" + key + "\"");
    return j.at(key);
}

std::size_t as_count(const json& j, const char* key)
{
    const json& v = field(j, key, "network description");
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw InvalidInput(std::string("\"") + key + "\" must be a non-negative integer");
    return v.get<std::size_t>();
}

bool as_flag(const json& j, const char* key)
{
    if (!j.contains(key))
        return false;
    if (!j.at(key).is_boolean())
        throw InvalidInput(std::string("\"") + key + "\" must be a boolean");
    return j.at(key).get<bool>();
}

Polynomial poly_from_json(const json& j, const char* what)
{
    if (!j.is_array())
        throw InvalidInput(std::string(what) + " must be an array of rational strings");
    std::vector<Rational> coeffs;
    for (const auto& c : j) {
        if (!c.is_string())
            throw InvalidInput(std::string(what) + " coefficients must be strings like \"-3/2\"");
        coeffs.push_back(parse_rational(c.get<std::string>()));
    }
    return Polynomial(std::move(coeffs));
}

json poly_to_json(const Polynomial& p)
{
    json arr = json::array();
    for (const auto& c : p.coeffs())
        arr.push_back(to_string(c));
    return arr;
}

void read_block(const json& j, const char* name, Matrix<EntrySpec>& block, int& next_id)
{
    if (!j.contains(name))
        return;
    const json& list = j.at(name);
    if (!list.is_array())
        throw InvalidInput(std::string("\"") + name + "\" must be an array");
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& e : list) {
        const json& row = field(e, "row", name);
        const json& col = field(e, "col", name);
        if (!row.is_number_integer() || !col.is_number_integer())
            throw InvalidInput(std::string(name) + ": row and col must be integers");
        const long long r = row.get<long long>();
        const long long c = col.get<long long>();
        if (r < 1 || c < 1 || static_cast<std::size_t>(r) > block.rows() || static_cast<std::size_t>(c) > block.cols())
            throw InvalidInput(std::string(name) + ": entry (" + std::to_string(r) + "," + std::to_string(c)
                + ") outside a " + std::to_string(block.rows()) + "x" + std::to_string(block.cols()) + " block");
        const auto pos = std::make_pair(static_cast<std::size_t>(r - 1), static_cast<std::size_t>(c - 1));
        if (!seen.insert(pos).second)
            throw InvalidInput(std::string(name) + ": entry (" + std::to_string(r) + "," + std::to_string(c) + ") listed twice");
        const json& spec = field(e, "spec", name);
        if (spec.is_string() && spec.get<std::string>() == "param") {
            block(pos.first, pos.second) = Parametrized{next_id++};
        } else if (spec.is_object() && spec.contains("known")) {
            block(pos.first, pos.second) = Known{tf_from_json(spec.at("known"))};
        } else {
            throw InvalidInput(std::string(name) + ": spec must be \"param\" or {\"known\": ...}");
        }
    }
}

json write_block(const Matrix<EntrySpec>& block)
{
    json list = json::array();
    for (std::size_t r = 0; r < block.rows(); ++r)
        for (std::size_t c = 0; c < block.cols(); ++c) {
            const auto& e = block(r, c);
            if (is_zero(e))
                continue;
            json entry = {{"row", r + 1}, {"col", c + 1}};
            if (const auto* k = std::get_if<Known>(&e))
                entry["spec"] = {{"known", tf_to_json(k->tf)}};
            else
                entry["spec"] = "param";
            list.push_back(std::move(entry));
        }
    return list;
}

} // namespace

json tf_to_json(const TransferFunction& t)
{
    return {{"num", poly_to_json(t.num())}, {"den", poly_to_json(t.den())}};
}

TransferFunction tf_from_json(const json& j)
{
    return TransferFunction(poly_from_json(field(j, "num", "transfer function"), "num"),
        poly_from_json(field(j, "den", "transfer function"), "den"));
}

json parse_json(std::string_view text)
{
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError("parse error at byte " + std::to_string(e.byte) + ": " + e.what(), e.byte);
    }
}

json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InvalidInput("cannot open " + path.string());
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_json(text);
}

NetworkModelSet model_set_from_json(const json& j)
{
    if (!j.is_object())
        throw InvalidInput("network description must be a JSON object");
    auto m = NetworkModelSet::zeros(as_count(j, "L"), as_count(j, "K"), as_count(j, "p"));
    m.strictly_proper = as_flag(j, "strictly_proper");
    m.lambda_diagonal = as_flag(j, "lambda_diagonal");
    int next_id = 1;
    read_block(j, "G", m.G, next_id);
    read_block(j, "R", m.R, next_id);
    read_block(j, "H", m.H, next_id);
    return m;
}

json model_set_to_json(const NetworkModelSet& m)
{
    return {
        {"L", m.L},
        {"K", m.K},
        {"p", m.p},
        {"strictly_proper", m.strictly_proper},
        {"lambda_diagonal", m.lambda_diagonal},
        {"G", write_block(m.G)},
        {"R", write_block(m.R)},
        {"H", write_block(m.H)},
    };
}

ConcreteModel concrete_model_from_json(const NetworkModelSet& base, const json& j)
{
    ConcreteModel c{base, {}, std::nullopt};
    const json& bindings = field(j, "bindings", "concrete model");
    if (!bindings.is_object())
        throw InvalidInput("\"bindings\" must be an object keyed by parameter id");
    for (const auto& [key, value] : bindings.items()) {
        int id = 0;
        try {
            std::size_t used = 0;
            id = std::stoi(key, &used);
            if (used != key.size())
                throw std::invalid_argument(key);
        } catch (const std::exception&) {
            throw InvalidInput("binding key \"" + key + "\" is not an integer id");
        }
        c.bindings.emplace(id, tf_from_json(value));
    }
    if (j.contains("lambda")) {
        const json& lam = j.at("lambda");
        if (!lam.is_array())
            throw InvalidInput("\"lambda\" must be an array of rows");
        const std::size_t n = lam.size();
        Matrix<Rational> mat(n, n);
        for (std::size_t r = 0; r < n; ++r) {
            if (!lam[r].is_array() || lam[r].size() != n)
                throw InvalidInput("\"lambda\" must be square");
            for (std::size_t k = 0; k < n; ++k) {
                if (!lam[r][k].is_string())
                    throw InvalidInput("\"lambda\" entries must be rational strings");
                mat(r, k) = parse_rational(lam[r][k].get<std::string>());
            }
        }
        c.lambda = std::move(mat);
    }
    return c;
}

json concrete_model_to_json(const ConcreteModel& c)
{
    json out;
    json b = json::object();
    for (const auto& [id, tf] : c.bindings)
        b[std::to_string(id)] = tf_to_json(tf);
    out["bindings"] = std::move(b);
    if (c.lambda) {
        json rows = json::array();
        for (std::size_t r = 0; r < c.lambda->rows(); ++r) {
            json row = json::array();
            for (std::size_t k = 0; k < c.lambda->cols(); ++k)
                row.push_back(to_string((*c.lambda)(r, k)));
            rows.push_back(std::move(row));
        }
        out["lambda"] = std::move(rows);
    }
    return out;
}

NetworkModelSet load_model_set(const std::filesystem::path& path)
{
    return model_set_from_json(read_json_file(path));
}

ConcreteModel load_concrete_model(const NetworkModelSet& base, const std::filesystem::path& path)
{
    return concrete_model_from_json(base, read_json_file(path));
}

} // namespace netid
