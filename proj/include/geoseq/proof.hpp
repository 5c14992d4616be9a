#pragma once

#include "sequent.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace geoseq {

// Proof trees are stored conclusion-first: each node records the rule that
// derives `conclusion` from the conclusions of `premises`. `subst` carries the
// rule-instantiation witness (schematic label -> concrete label); checkers
// treat it as a hint and re-validate against the rule schema.

struct Proof;
using ProofPtr = std::shared_ptr<const Proof>;

// Labelled-calculus proof node (sequents carry a relational part).
struct Proof {
    std::string rule;
    LabelledSequent conclusion;
    std::map<std::string, std::string> subst;
    std::vector<ProofPtr> premises;
};

ProofPtr mk_proof(std::string rule, LabelledSequent concl,
                  std::vector<ProofPtr> prems = {},
                  std::map<std::string, std::string> subst = {});

struct SlsProof;
using SlsProofPtr = std::shared_ptr<const SlsProof>;

// Simply-labelled proof node (no relational part in the sequents).
struct SlsProof {
    std::string rule;
    SimplyLabelledSequent conclusion;
    std::map<std::string, std::string> subst;
    std::vector<SlsProofPtr> premises;
};

SlsProofPtr mk_sls_proof(std::string rule, SimplyLabelledSequent concl,
                         std::vector<SlsProofPtr> prems = {},
                         std::map<std::string, std::string> subst = {});

// Depth counts nodes on the longest root-to-leaf path (a leaf is depth 1);
// size counts all nodes.
int proof_depth(const ProofPtr& p);
int proof_size(const ProofPtr& p);
int proof_depth(const SlsProofPtr& p);
int proof_size(const SlsProofPtr& p);

// Wire format shared by both calculi:
//   { "calculus": "g3i" | "lg3ipm", "rule": str, "conclusion": str,
//     "subst": { var: str }, "premises": [ ... ] }
// Conclusions are stored in sequent text form and re-parsed on load.
std::string proof_to_json(const ProofPtr& p);
std::string proof_to_json(const SlsProofPtr& p);
ProofPtr labelled_proof_from_json(const std::string& text);
SlsProofPtr sls_proof_from_json(const std::string& text);
// Peeks at the "calculus" field so callers can dispatch before parsing.
std::string json_calculus(const std::string& text);

// Indented tree, one node per line, premises below their conclusion.
std::string render_proof_text(const ProofPtr& p);
std::string render_proof_text(const SlsProofPtr& p);
// Inference-tree LaTeX (bussproofs); trees wider than five premises fall back
// to numbered sub-trees.
std::string render_proof_latex(const ProofPtr& p);
std::string render_proof_latex(const SlsProofPtr& p);

} // namespace geoseq
