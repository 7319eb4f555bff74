#pragma once

/*
 * Table and report emission.  CSV, JSON, and markdown all render numeric
 * cells through the same 15-significant-digit midpoint formatter so the
 * formats agree cell-for-cell; JSON additionally carries interval
 * half-widths and the exact integer shadows.  Output ordering is
 * deterministic, so JSON round-trips byte-identically.
 */

#include <quadlucas/verifier.hpp>

#include <json.hpp>

#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace quadlucas::emit {

enum class Format { Csv, Json, Md };

inline Format parse_format(std::string_view s) {
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    if (s == "md") return Format::Md;
    throw std::invalid_argument("format must be one of: csv, json, md");
}

inline std::string sig15(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

inline std::string sig3(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

inline std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

using ordered_json = nlohmann::ordered_json;

/* ---------------- proof ledgers (verify) ---------------- */

inline ordered_json row_json(const LedgerRow& r) {
    ordered_json j;
    j["id"] = r.id;
    j["lhs"] = sig15(r.lhs.mid());
    j["rhs"] = sig15(r.rhs.mid());
    j["verdict"] = to_string(r.verdict);
    j["margin"] = sig15(r.margin);
    j["asserted"] = r.asserted;
    j["err_lhs"] = sig3(r.lhs.width() / 2);
    j["err_rhs"] = sig3(r.rhs.width() / 2);
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline ordered_json ledger_json(const ProofLedger& L) {
    ordered_json j;
    j["gamma"] = L.gamma;
    j["n"] = L.n;
    ordered_json q;
    q["degree"] = L.degree;
    q["h_gamma"] = sig15(L.h_gamma.mid());
    q["err_h_gamma"] = sig3(L.h_gamma.width() / 2);
    q["h_phi"] = sig15(L.h_phi.mid());
    q["err_h_phi"] = sig3(L.h_phi.width() / 2);
    q["arch0"] = sig15(L.arch0.mid());
    q["arch1"] = sig15(L.arch1.mid());
    q["sum_p"] = sig15(L.sp.value().mid());
    q["sum_np"] = sig15(L.snp.value().mid());
    q["sum_p1"] = sig15(L.sp1.value().mid());
    q["sum_p2"] = sig15(L.sp2.value().mid());
    q["sum_p_shadow"] = L.sp.prod.str();
    q["sum_np_shadow"] = L.snp.prod.str();
    q["sum_p1_shadow"] = L.sp1.prod.str();
    q["sum_p2_shadow"] = L.sp2.prod.str();
    q["P"] = L.P.str();
    q["P_exact"] = L.p_exact;
    q["witness"] = L.witness;
    q["P_un"] = L.P_un.str();
    q["P_un_exact"] = L.p_un_exact;
    q["case"] = L.case_tag;
    q["gamma_integral"] = L.gamma_integral;
    if (!L.support_anomalies.empty()) q["support_anomalies"] = L.support_anomalies;
    ordered_json primes = ordered_json::array();
    for (const PhiPrimeRow& r : L.primes) {
        ordered_json e;
        e["ideal"] = r.ideal;
        e["p"] = r.p.str();
        e["f"] = r.f;
        e["e"] = r.e;
        e["nu"] = r.nu;
        e["primitive"] = r.primitive;
        primes.push_back(std::move(e));
    }
    q["phi_primes"] = std::move(primes);
    if (L.has_beta) {
        q["beta"] = L.beta.beta;
        q["beta_torsion"] = L.beta.torsion;
        ordered_json cp = ordered_json::array();
        for (const BigInt& p : L.beta.curly_p) cp.push_back(p.str());
        q["curly_p"] = std::move(cp);
        q["small_divisor_count"] = L.beta.small_divisor_count;
        q["curly_p_prime_count"] = L.beta.curly_p_prime_count;
        ordered_json dp = ordered_json::array();
        for (const DpEntry& e : L.beta.dp) {
            ordered_json d;
            d["p"] = e.p.str();
            d["ord"] = e.ord;
            d["d_p"] = e.d_p;
            d["nu_v_ord"] = e.nu_v_ord;
            d["nu_v_n"] = e.nu_v_n;
            dp.push_back(std::move(d));
        }
        q["dp"] = std::move(dp);
    }
    j["quantities"] = std::move(q);
    ordered_json rows = ordered_json::array();
    for (const LedgerRow& r : L.rows) rows.push_back(row_json(r));
    j["rows"] = std::move(rows);
    return j;
}

inline void write_ledgers_json(std::ostream& os, const std::vector<ProofLedger>& v) {
    ordered_json arr = ordered_json::array();
    for (const ProofLedger& L : v) arr.push_back(ledger_json(L));
    os << arr.dump(2) << '\n';
}

inline void write_ledgers_csv(std::ostream& os, const std::vector<ProofLedger>& v) {
    os << "gamma,n,id,lhs,rhs,verdict,margin,asserted,note\n";
    for (const ProofLedger& L : v)
        for (const LedgerRow& r : L.rows)
            os << csv_cell(L.gamma) << ',' << L.n << ',' << r.id << ','
               << sig15(r.lhs.mid()) << ',' << sig15(r.rhs.mid()) << ','
               << to_string(r.verdict) << ',' << sig15(r.margin) << ','
               << (r.asserted ? "true" : "false") << ',' << csv_cell(r.note) << '\n';
}

inline void write_ledgers_md(std::ostream& os, const std::vector<ProofLedger>& v) {
    os << "| gamma | n | id | lhs | rhs | verdict | margin | asserted | note |\n";
    os << "|---|---|---|---|---|---|---|---|---|\n";
    for (const ProofLedger& L : v)
        for (const LedgerRow& r : L.rows)
            os << "| " << L.gamma << " | " << L.n << " | " << r.id << " | "
               << sig15(r.lhs.mid()) << " | " << sig15(r.rhs.mid()) << " | "
               << to_string(r.verdict) << " | " << sig15(r.margin) << " | "
               << (r.asserted ? "true" : "false") << " | " << r.note << " |\n";
}

/* ---------------- bound table (scan) ---------------- */

inline void write_bound_csv(std::ostream& os, const std::vector<ScanRow>& v) {
    os << "n,P,bound,ratio,primitive_f1,primitive_f2,exact\n";
    for (const ScanRow& r : v) {
        os << r.n << ',' << r.P.str() << ','
           << (r.bound_defined ? sig15(r.bound.mid()) : "") << ','
           << (r.bound_defined ? sig15(r.ratio) : "") << ',' << r.primitive_f1 << ','
           << r.primitive_f2 << ',' << (r.exact ? "true" : "false") << '\n';
    }
}

inline void write_bound_json(std::ostream& os, const std::vector<ScanRow>& v) {
    ordered_json arr = ordered_json::array();
    for (const ScanRow& r : v) {
        ordered_json j;
        j["n"] = r.n;
        j["P"] = r.P.str();
        if (r.bound_defined) {
            j["bound"] = sig15(r.bound.mid());
            j["err_bound"] = sig3(r.bound.width() / 2);
            j["ratio"] = sig15(r.ratio);
        } else {
            j["bound"] = nullptr;
            j["ratio"] = nullptr;
        }
        j["primitive_f1"] = r.primitive_f1;
        j["primitive_f2"] = r.primitive_f2;
        j["exact"] = r.exact;
        j["asserted_pass"] = r.asserted_pass;
        if (!r.failing.empty()) j["failing"] = r.failing;
        if (!r.error.empty()) j["error"] = r.error;
        arr.push_back(std::move(j));
    }
    os << arr.dump(2) << '\n';
}

inline void write_bound_md(std::ostream& os, const std::vector<ScanRow>& v) {
    os << "| n | P | bound | ratio | primitive_f1 | primitive_f2 | exact |\n";
    os << "|---|---|---|---|---|---|---|\n";
    for (const ScanRow& r : v)
        os << "| " << r.n << " | " << r.P.str() << " | "
           << (r.bound_defined ? sig15(r.bound.mid()) : "") << " | "
           << (r.bound_defined ? sig15(r.ratio) : "") << " | " << r.primitive_f1 << " | "
           << r.primitive_f2 << " | " << (r.exact ? "true" : "false") << " |\n";
}

/* ---------------- factor-seq / primitive-divisors ---------------- */

struct SeqIdeal {
    std::string ideal;
    BigInt p;
    int f = 1;
    int e = 1;
    long nu = 0;
    bool primitive = false;
};

struct SeqRow {
    unsigned long n = 0;
    BigRat norm;
    std::string factorization;
    bool complete = true;
    std::vector<SeqIdeal> ideals;
};

inline void write_seq_csv(std::ostream& os, const std::vector<SeqRow>& v) {
    os << "n,norm,factorization,complete,ideal,p,f,e,nu,class\n";
    for (const SeqRow& r : v) {
        if (r.ideals.empty()) {
            os << r.n << ',' << csv_cell(r.norm.str()) << ',' << csv_cell(r.factorization)
               << ',' << (r.complete ? "true" : "false") << ",,,,,,\n";
            continue;
        }
        for (const SeqIdeal& id : r.ideals)
            os << r.n << ',' << csv_cell(r.norm.str()) << ',' << csv_cell(r.factorization)
               << ',' << (r.complete ? "true" : "false") << ',' << id.ideal << ','
               << id.p.str() << ',' << id.f << ',' << id.e << ',' << id.nu << ','
               << (id.primitive ? "primitive" : "non-primitive") << '\n';
    }
}

inline void write_seq_json(std::ostream& os, const std::vector<SeqRow>& v) {
    ordered_json arr = ordered_json::array();
    for (const SeqRow& r : v) {
        ordered_json j;
        j["n"] = r.n;
        j["norm"] = r.norm.str();
        j["factorization"] = r.factorization;
        j["complete"] = r.complete;
        ordered_json ids = ordered_json::array();
        for (const SeqIdeal& id : r.ideals) {
            ordered_json e;
            e["ideal"] = id.ideal;
            e["p"] = id.p.str();
            e["f"] = id.f;
            e["e"] = id.e;
            e["nu"] = id.nu;
            e["class"] = id.primitive ? "primitive" : "non-primitive";
            ids.push_back(std::move(e));
        }
        j["ideals"] = std::move(ids);
        arr.push_back(std::move(j));
    }
    os << arr.dump(2) << '\n';
}

inline void write_seq_md(std::ostream& os, const std::vector<SeqRow>& v) {
    os << "| n | norm | factorization | complete | ideal | f | e | nu | class |\n";
    os << "|---|---|---|---|---|---|---|---|---|\n";
    for (const SeqRow& r : v) {
        if (r.ideals.empty()) {
            os << "| " << r.n << " | " << r.norm.str() << " | " << r.factorization << " | "
               << (r.complete ? "true" : "false") << " | | | | | |\n";
            continue;
        }
        for (const SeqIdeal& id : r.ideals)
            os << "| " << r.n << " | " << r.norm.str() << " | " << r.factorization << " | "
               << (r.complete ? "true" : "false") << " | " << id.ideal << " | " << id.f
               << " | " << id.e << " | " << id.nu << " | "
               << (id.primitive ? "primitive" : "non-primitive") << " |\n";
    }
}

inline void write_prim_csv(std::ostream& os, const std::vector<SeqRow>& v) {
    os << "n,ideal,p,f,nu\n";
    for (const SeqRow& r : v)
        for (const SeqIdeal& id : r.ideals)
            if (id.primitive)
                os << r.n << ',' << id.ideal << ',' << id.p.str() << ',' << id.f << ','
                   << id.nu << '\n';
}

inline void write_prim_json(std::ostream& os, const std::vector<SeqRow>& v) {
    ordered_json arr = ordered_json::array();
    for (const SeqRow& r : v)
        for (const SeqIdeal& id : r.ideals) {
            if (!id.primitive) continue;
            ordered_json j;
            j["n"] = r.n;
            j["ideal"] = id.ideal;
            j["p"] = id.p.str();
            j["f"] = id.f;
            j["nu"] = id.nu;
            arr.push_back(std::move(j));
        }
    os << arr.dump(2) << '\n';
}

inline void write_prim_md(std::ostream& os, const std::vector<SeqRow>& v) {
    os << "| n | ideal | p | f | nu |\n|---|---|---|---|---|\n";
    for (const SeqRow& r : v)
        for (const SeqIdeal& id : r.ideals)
            if (id.primitive)
                os << "| " << r.n << " | " << id.ideal << " | " << id.p.str() << " | " << id.f
                   << " | " << id.nu << " |\n";
}

}  // namespace quadlucas::emit
