#include "schema.hpp"

#include <map>
#include <stdexcept>

namespace picklab::cli {

// generated at configure time
const std::map<std::string, const char*>& embedded_schema_sources();

namespace {

using nlohmann::json;

std::string escape_token(const std::string& s)
{
    std::string r;
    for (char c : s) {
        if (c == '~') r += "~0";
        else if (c == '/') r += "~1";
        else r += c;
    }
    return r;
}

bool has_type(const json& v, const std::string& t)
{
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "boolean") return v.is_boolean();
    if (t == "null") return v.is_null();
    if (t == "number") return v.is_number();
    if (t == "integer") {
        if (v.is_number_integer()) return true;
        if (v.is_number_float()) {
            const double d = v.get<double>();
            return d == static_cast<double>(static_cast<long long>(d));
        }
        return false;
    }
    throw std::invalid_argument("schema uses unsupported type '" + t + "'");
}

class Validator {
public:
    explicit Validator(const json& root) : root_(root) {}

    std::optional<SchemaIssue> run(const json& v, const json& s, const std::string& path) const
    {
        if (s.is_boolean()) {
            if (s.get<bool>()) return std::nullopt;
            return SchemaIssue{path, "no value is allowed here"};
        }
        if (s.contains("$ref")) {
            if (auto e = run(v, resolve(s["$ref"].get<std::string>()), path)) return e;
        }
        if (s.contains("type")) {
            const json& t = s["type"];
            bool ok = false;
            if (t.is_string()) ok = has_type(v, t.get<std::string>());
            else
                for (const auto& x : t) ok = ok || has_type(v, x.get<std::string>());
            if (!ok) return SchemaIssue{path, "expected type " + t.dump()};
        }
        if (s.contains("const") && v != s["const"]) return SchemaIssue{path, "expected the constant " + s["const"].dump()};
        if (s.contains("enum")) {
            bool ok = false;
            for (const auto& x : s["enum"]) ok = ok || v == x;
            if (!ok) return SchemaIssue{path, "value not in " + s["enum"].dump()};
        }
        if (v.is_number()) {
            const double d = v.get<double>();
            if (s.contains("minimum") && d < s["minimum"].get<double>())
                return SchemaIssue{path, "value below minimum " + s["minimum"].dump()};
            if (s.contains("maximum") && d > s["maximum"].get<double>())
                return SchemaIssue{path, "value above maximum " + s["maximum"].dump()};
        }
        if (v.is_array()) {
            if (s.contains("minItems") && v.size() < s["minItems"].get<std::size_t>())
                return SchemaIssue{path, "fewer than " + s["minItems"].dump() + " items"};
            if (s.contains("maxItems") && v.size() > s["maxItems"].get<std::size_t>())
                return SchemaIssue{path, "more than " + s["maxItems"].dump() + " items"};
            if (s.contains("items"))
                for (std::size_t k = 0; k < v.size(); ++k)
                    if (auto e = run(v[k], s["items"], path + "/" + std::to_string(k))) return e;
        }
        if (v.is_object()) {
            if (s.contains("required"))
                for (const auto& r : s["required"])
                    if (!v.contains(r.get<std::string>()))
                        return SchemaIssue{path, "missing required member '" + r.get<std::string>() + "'"};
            const json* props = s.contains("properties") ? &s["properties"] : nullptr;
            for (auto it = v.begin(); it != v.end(); ++it) {
                const std::string sub = path + "/" + escape_token(it.key());
                if (props && props->contains(it.key())) {
                    if (auto e = run(it.value(), (*props)[it.key()], sub)) return e;
                } else if (s.contains("additionalProperties")) {
                    if (auto e = run(it.value(), s["additionalProperties"], sub)) {
                        if (s["additionalProperties"].is_boolean()) return SchemaIssue{sub, "unexpected member"};
                        return e;
                    }
                }
            }
        }
        if (s.contains("allOf"))
            for (const auto& sub : s["allOf"])
                if (auto e = run(v, sub, path)) return e;
        if (s.contains("anyOf")) {
            std::optional<SchemaIssue> first;
            bool ok = false;
            for (const auto& sub : s["anyOf"]) {
                auto e = run(v, sub, path);
                if (!e) {
                    ok = true;
                    break;
                }
                if (!first || e->path.size() > first->path.size()) first = e;
            }
            if (!ok) return SchemaIssue{first->path, "no alternative matched (" + first->message + ")"};
        }
        if (s.contains("oneOf")) {
            int hits = 0;
            for (const auto& sub : s["oneOf"]) hits += run(v, sub, path) ? 0 : 1;
            if (hits != 1) return SchemaIssue{path, "expected exactly one alternative to match, got " + std::to_string(hits)};
        }
        return std::nullopt;
    }

    const json& resolve(const std::string& ref) const
    {
        if (ref.empty() || ref[0] != '#') throw std::invalid_argument("only local $ref is supported: " + ref);
        const json* cur = &root_;
        std::size_t pos = 1;
        while (pos < ref.size()) {
            if (ref[pos] != '/') throw std::invalid_argument("bad $ref " + ref);
            std::size_t next = ref.find('/', pos + 1);
            if (next == std::string::npos) next = ref.size();
            std::string tok = ref.substr(pos + 1, next - pos - 1);
            for (std::size_t k = 0; (k = tok.find("~1", k)) != std::string::npos;) tok.replace(k, 2, "/");
            for (std::size_t k = 0; (k = tok.find("~0", k)) != std::string::npos;) tok.replace(k, 2, "~");
            if (!cur->is_object() || !cur->contains(tok)) throw std::invalid_argument("unresolved $ref " + ref);
            cur = &(*cur)[tok];
            pos = next;
        }
        return *cur;
    }

private:
    const json& root_;
};

}  // namespace

std::optional<SchemaIssue> validate(const nlohmann::json& instance, const nlohmann::json& schema, const std::string& ref)
{
    Validator v(schema);
    return v.run(instance, ref.empty() ? schema : v.resolve(ref), "");
}

const nlohmann::json& embedded_schema(const std::string& name)
{
    static std::map<std::string, json> cache;
    auto it = cache.find(name);
    if (it != cache.end()) return it->second;
    const auto& src = embedded_schema_sources();
    auto s = src.find(name);
    if (s == src.end()) throw std::out_of_range("no embedded schema named " + name);
    return cache.emplace(name, json::parse(s->second)).first->second;
}

}  // namespace picklab::cli
