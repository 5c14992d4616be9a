#include "geoseq/proof.hpp"

#include <cassert>
#include <json.hpp>
#include <sstream>

namespace geoseq {

using nlohmann::json;

ProofPtr mk_proof(std::string rule, LabelledSequent concl,
                  std::vector<ProofPtr> prems,
                  std::map<std::string, std::string> subst) {
    auto p = std::make_shared<Proof>();
    p->rule = std::move(rule);
    p->conclusion = std::move(concl);
    p->subst = std::move(subst);
    p->premises = std::move(prems);
    return p;
}

SlsProofPtr mk_sls_proof(std::string rule, SimplyLabelledSequent concl,
                         std::vector<SlsProofPtr> prems,
                         std::map<std::string, std::string> subst) {
    auto p = std::make_shared<SlsProof>();
    p->rule = std::move(rule);
    p->conclusion = std::move(concl);
    p->subst = std::move(subst);
    p->premises = std::move(prems);
    return p;
}

namespace {

template <typename P> int depth_of(const P& p) {
    assert(p);
    int best = 0;
    for (const auto& q : p->premises) best = std::max(best, depth_of(q));
    return best + 1;
}

template <typename P> int size_of(const P& p) {
    assert(p);
    int n = 1;
    for (const auto& q : p->premises) n += size_of(q);
    return n;
}

template <typename P> json to_json_rec(const P& p, const char* calculus) {
    json j;
    j["calculus"] = calculus;
    j["rule"] = p->rule;
    j["conclusion"] = render_sequent(p->conclusion);
    j["subst"] = json::object();
    for (const auto& [k, v] : p->subst) j["subst"][k] = v;
    j["premises"] = json::array();
    for (const auto& q : p->premises) j["premises"].push_back(to_json_rec(q, calculus));
    return j;
}

// Shared structural validation for both calculi.
void require_node_shape(const json& j, const char* calculus) {
    if (!j.is_object()) throw std::runtime_error("proof json: node is not an object");
    for (const char* key : {"calculus", "rule", "conclusion"}) {
        if (!j.contains(key) || !j[key].is_string())
            throw std::runtime_error(std::string("proof json: missing string field '") + key + "'");
    }
    if (j["calculus"].get<std::string>() != calculus)
        throw std::runtime_error("proof json: calculus is '" + j["calculus"].get<std::string>() +
                                 "', expected '" + calculus + "'");
    if (j.contains("subst") && !j["subst"].is_object())
        throw std::runtime_error("proof json: 'subst' must be an object");
    if (j.contains("premises") && !j["premises"].is_array())
        throw std::runtime_error("proof json: 'premises' must be an array");
}

std::map<std::string, std::string> subst_from_json(const json& j) {
    std::map<std::string, std::string> out;
    if (!j.contains("subst")) return out;
    for (const auto& [k, v] : j["subst"].items()) {
        if (!v.is_string()) throw std::runtime_error("proof json: subst values must be strings");
        out[k] = v.get<std::string>();
    }
    return out;
}

ProofPtr labelled_from_json_rec(const json& j) {
    require_node_shape(j, "g3i");
    std::vector<ProofPtr> prems;
    if (j.contains("premises"))
        for (const auto& q : j["premises"]) prems.push_back(labelled_from_json_rec(q));
    return mk_proof(j["rule"].get<std::string>(),
                    parse_labelled_sequent(j["conclusion"].get<std::string>()),
                    std::move(prems), subst_from_json(j));
}

SlsProofPtr sls_from_json_rec(const json& j) {
    require_node_shape(j, "lg3ipm");
    std::vector<SlsProofPtr> prems;
    if (j.contains("premises"))
        for (const auto& q : j["premises"]) prems.push_back(sls_from_json_rec(q));
    return mk_sls_proof(j["rule"].get<std::string>(),
                        parse_sls_sequent(j["conclusion"].get<std::string>()),
                        std::move(prems), subst_from_json(j));
}

std::string render_subst(const std::map<std::string, std::string>& subst) {
    if (subst.empty()) return "";
    std::string out = " [";
    bool first = true;
    for (const auto& [k, v] : subst) {
        if (!first) out += ", ";
        first = false;
        out += k + "=" + v;
    }
    out += "]";
    return out;
}

template <typename P> void render_text_rec(const P& p, int indent, std::string& out) {
    out.append(static_cast<std::size_t>(indent) * 2, ' ');
    out += p->rule + render_subst(p->subst) + " :: " + render_sequent(p->conclusion) + "\n";
    for (const auto& q : p->premises) render_text_rec(q, indent + 1, out);
}

// bussproofs renders at most five premisses per inference; wider nodes are
// split out as numbered trees referenced from a vdots axiom.
template <typename P>
void render_latex_tree(const P& p, std::string& out, std::vector<std::string>& overflow,
                       int& overflow_count) {
    const std::size_t n = p->premises.size();
    if (n > 5) {
        for (const auto& q : p->premises) {
            int id = ++overflow_count;
            std::string sub;
            render_latex_tree(q, sub, overflow, overflow_count);
            overflow.push_back("% subtree (" + std::to_string(id) + ")\n\\begin{prooftree}\n" +
                               sub + "\\end{prooftree}\n");
            out += "\\AxiomC{$\\vdots\\;(" + std::to_string(id) + ")$}\n";
        }
    } else {
        for (const auto& q : p->premises) render_latex_tree(q, out, overflow, overflow_count);
    }
    if (n == 0) out += "\\AxiomC{}\n";
    out += "\\RightLabel{$" + p->rule + "$}\n";
    static const char* kInf[] = {"\\UnaryInfC", "\\UnaryInfC", "\\BinaryInfC", "\\TrinaryInfC",
                                 "\\QuaternaryInfC", "\\QuinaryInfC"};
    std::size_t arity = n == 0 ? 1 : std::min<std::size_t>(n, 5);
    out += std::string(kInf[arity]) + "{$" + render_sequent_latex(p->conclusion) + "$}\n";
}

template <typename P> std::string render_latex_proof(const P& p) {
    std::string body;
    std::vector<std::string> overflow;
    int overflow_count = 0;
    render_latex_tree(p, body, overflow, overflow_count);
    std::string out;
    for (const auto& s : overflow) out += s;
    out += "\\begin{prooftree}\n" + body + "\\end{prooftree}\n";
    return out;
}

} // namespace

int proof_depth(const ProofPtr& p) { return depth_of(p); }
int proof_size(const ProofPtr& p) { return size_of(p); }
int proof_depth(const SlsProofPtr& p) { return depth_of(p); }
int proof_size(const SlsProofPtr& p) { return size_of(p); }

std::string proof_to_json(const ProofPtr& p) { return to_json_rec(p, "g3i").dump(2); }
std::string proof_to_json(const SlsProofPtr& p) { return to_json_rec(p, "lg3ipm").dump(2); }

ProofPtr labelled_proof_from_json(const std::string& text) {
    return labelled_from_json_rec(json::parse(text));
}

SlsProofPtr sls_proof_from_json(const std::string& text) {
    return sls_from_json_rec(json::parse(text));
}

std::string json_calculus(const std::string& text) {
    json j = json::parse(text);
    if (!j.is_object() || !j.contains("calculus") || !j["calculus"].is_string())
        throw std::runtime_error("proof json: missing 'calculus' field");
    return j["calculus"].get<std::string>();
}

std::string render_proof_text(const ProofPtr& p) {
    std::string out;
    render_text_rec(p, 0, out);
    return out;
}

std::string render_proof_text(const SlsProofPtr& p) {
    std::string out;
    render_text_rec(p, 0, out);
    return out;
}

std::string render_proof_latex(const ProofPtr& p) { return render_latex_proof(p); }
std::string render_proof_latex(const SlsProofPtr& p) { return render_latex_proof(p); }

} // namespace geoseq
