use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use kanforge::simplicial::{isomorphic, torus};
use kanforge_cli::format::{complex_to_json, parse_complex_str};
use tempfile::TempDir;

const CIRCLE: &str = r#"{"name": "S1", "cells": {"0": ["v"], "1": [{"id": "a", "faces": [{"base": "v", "degens": []}, {"base": "v", "degens": []}]}]}}"#;

fn kanforge(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_kanforge"));
    cmd.args(args).env_remove("KANFORGE_MAX_DIM");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        let f = Files(tempfile::tempdir().unwrap());
        f.write("circle.json", CIRCLE);
        f
    }

    fn write(&self, name: &str, text: &str) -> String {
        let p = self.0.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.display().to_string()
    }

    fn path(&self, name: &str) -> String {
        self.0.path().join(name).display().to_string()
    }

    fn dir(&self) -> &Path {
        self.0.path()
    }
}

#[test]
fn circle_homology() {
    let f = Files::new();
    let o = kanforge(&["homology", &f.path("circle.json")], &[]);
    assert_eq!(stdout(&o), "H0=Z\nH1=Z\nOK\n");
    assert_eq!(o.status.code(), Some(0));
    let o = kanforge(&["cohomology", &f.path("circle.json"), "--coeff", "z2", "--max-dim", "2"], &[]);
    assert_eq!(stdout(&o), "H^0=Z/2\nH^1=Z/2\nH^2=0\nOK\n");
}

#[test]
fn circle_is_not_kan() {
    let f = Files::new();
    let o = kanforge(&["kan", &f.path("circle.json"), "--max-dim", "2"], &[]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(1));
    assert!(out.contains("witness: p=2 k=1 faces (a, a)\n"), "{out}");
    assert!(out.ends_with("FAIL\n"));
}

#[test]
fn nerve_of_z2_is_kan_with_pi1_z2() {
    let f = Files::new();
    let o = kanforge(&["emit", "wbar", "Z/2", "3", "--out", &f.path("bz2.json")], &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = kanforge(&["kan", &f.path("bz2.json"), "--max-dim", "3"], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("unfilled: 0\n"));
    let o = kanforge(&["pi1", &f.path("bz2.json")], &[]);
    assert!(stdout(&o).contains("group: Z/2\n"), "{}", stdout(&o));
}

#[test]
fn half_twist_class() {
    let f = Files::new();
    let twist = f.write("halftwist.json", r#"{"group": {"kind": "finite", "name": "Z/2"}, "labels": {"a": "t"}}"#);
    let id = f.write("id-z2.json", r#"{"degree": 1, "coeff": "z2", "rule": "identity"}"#);
    let o = kanforge(&["charclass", &f.path("circle.json"), &twist, "--cocycle", &id], &[]);
    assert_eq!(stdout(&o), "H^1 class: nonzero (Z/2)\nOK\n");
    assert_eq!(o.status.code(), Some(0));
    let trivial = f.write("trivial.json", r#"{"group": {"kind": "finite", "name": "Z/2"}, "labels": {}}"#);
    let o = kanforge(&["charclass", &f.path("circle.json"), &trivial, "--cocycle", &id], &[]);
    assert_eq!(stdout(&o), "H^1 class: zero (Z/2)\nOK\n");
}

#[test]
fn non_cocycles_fail() {
    let f = Files::new();
    let twist = f.write("z3.json", r#"{"group": {"kind": "finite", "name": "Z/3"}, "labels": {"a": "g"}}"#);
    let c = f.write("c.json", r#"{"degree": 2, "coeff": "z", "values": {"g,g": 1}}"#);
    let o = kanforge(&["charclass", &f.path("circle.json"), &twist, "--cocycle", &c], &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).ends_with("FAIL\n"));
}

#[test]
fn presented_group_class_on_the_torus() {
    let f = Files::new();
    kanforge(&["emit", "torus", "--out", &f.path("t.json")], &[]);
    let twist = f.write(
        "lattice.json",
        r#"{"group": {"kind": "presented", "name": "Z^2"}, "labels": {"a": "x1", "b": "x2", "c": "x1*x2"}}"#,
    );
    let c = f.write("c.json", r#"{"degree": 1, "coeff": "z", "rule": "coordinate:0"}"#);
    let o = kanforge(&["charclass", &f.path("t.json"), &twist, "--cocycle", &c], &[]);
    assert_eq!(stdout(&o), "H^1 class: nonzero (Z^2)\nOK\n", "{}", stderr(&o));
    let o = kanforge(&["bundle", "check", &f.path("t.json"), &twist], &[]);
    assert!(stdout(&o).contains("labels: a=(1,0) b=(0,1) c=(1,1)\n"), "{}", stdout(&o));
}

#[test]
fn emitted_product_round_trips() {
    let f = Files::new();
    let c = f.path("circle.json");
    let o = kanforge(&["emit", "product", &c, &c], &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let parsed = parse_complex_str(&text, "product").unwrap();
    assert_eq!(complex_to_json(&parsed.presentation, None) + "\n", text);
    let k = parsed.presentation.build().unwrap();
    assert_eq!(k.counts(), vec![1, 3, 2]);
    assert!(isomorphic(&k, &torus()));
    let path = f.write("product.json", &text);
    let o = kanforge(&["homology", &path], &[]);
    assert_eq!(stdout(&o), "H0=Z\nH1=Z^2\nH2=Z\nOK\n");
}

#[test]
fn torus_cup_table() {
    let f = Files::new();
    kanforge(&["emit", "torus", "--out", &f.path("t.json")], &[]);
    let o = kanforge(&["cup", &f.path("t.json"), "--deg", "1", "1"], &[]);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(&lines[..3], ["H^1=Z^2", "H^1=Z^2", "H^2=Z"]);
    let value = |i: usize, j: usize| -> i64 {
        let key = format!("u1_{i} ∪ u1_{j} = (");
        let line = lines.iter().find(|l| l.starts_with(&key)).unwrap();
        line[key.len()..line.len() - 1].parse().unwrap()
    };
    assert_eq!(value(0, 0), 0);
    assert_eq!(value(1, 1), 0);
    assert_eq!(value(0, 1), -value(1, 0));
    assert_eq!(value(0, 1).abs(), 1);
    assert_eq!(lines.last(), Some(&"OK"));
}

#[test]
fn degeneracy_order_errors_name_the_field() {
    let f = Files::new();
    let bad = f.write(
        "bad.json",
        r#"{"cells": {"0": ["v"], "1": [{"id": "a", "faces": [{"base": "v"}, {"base": "v"}]}],
            "2": [{"id": "s", "faces": [{"base": "a"}, {"base": "v", "degens": [0, 1]}, {"base": "a"}]}]}}"#,
    );
    let o = kanforge(&["validate", &bad], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cells.2[0].faces[1].degens"), "{}", stderr(&o));
    let o = kanforge(&["homology", &f.write("junk.json", "{ not json")], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1"), "{}", stderr(&o));
}

#[test]
fn identity_violations_are_reported() {
    let f = Files::new();
    let bad = f.write(
        "bad.json",
        r#"{"name": "bad", "cells": {"0": ["x", "y"], "1": [
            {"id": "e", "faces": [{"base": "y"}, {"base": "x"}]},
            {"id": "g", "faces": [{"base": "x"}, {"base": "y"}]}],
            "2": [{"id": "T", "faces": [{"base": "e"}, {"base": "e"}, {"base": "e"}]}]}}"#,
    );
    let o = kanforge(&["validate", &bad], &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("T: d_"), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("FAIL\n"));
    let o = kanforge(&["homology", &bad], &[]);
    assert_eq!(o.status.code(), Some(2));
    let o = kanforge(&["validate", &f.path("circle.json")], &[]);
    assert_eq!(stdout(&o), "name: S1\ncells: 1 1\nOK\n");
}

#[test]
fn budgets_exit_with_three() {
    let f = Files::new();
    kanforge(&["emit", "torus", "--out", &f.path("t.json")], &[]);
    let o = kanforge(&["homology", &f.path("t.json")], &[("KANFORGE_MAX_DIM", "1")]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(stderr(&o).contains("budget exceeded"));
    let o = kanforge(&["emit", "wbar", "z3", "9"], &[]);
    assert_eq!(o.status.code(), Some(3));
    let o = kanforge(&["emit", "wbar", "z5", "9"], &[("KANFORGE_MAX_DIM", "12")]);
    assert_eq!(o.status.code(), Some(3), "nerve of Z/5 through 9 has too many simplices");
    let o = kanforge(&["homology", &f.path("t.json")], &[("KANFORGE_MAX_DIM", "many")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn covering_maps() {
    let f = Files::new();
    kanforge(&["emit", "cycle", "2", "--out", &f.path("c2.json")], &[]);
    let map = f.write(
        "wrap.json",
        r#"{"source": "c2.json", "target": "circle.json",
            "images": {"v0": "v", "v1": "v", "e0": "a", "e1": "a"}}"#,
    );
    let o = kanforge(&["cover", "check", &map, "--sheets", "2"], &[]);
    assert_eq!(stdout(&o), "map: C2 -> S1\nsheets: 2\nOK\n", "{}", stderr(&o));
    let o = kanforge(&["cover", "check", &map, "--sheets", "3"], &[]);
    assert_eq!(o.status.code(), Some(1));
    let collapse = f.write(
        "collapse.json",
        r#"{"source": "c2.json", "target": "circle.json",
            "images": {"v0": "v", "v1": "v", "e0": "a", "e1": {"base": "v", "degens": [0]}}}"#,
    );
    let o = kanforge(&["cover", "check", &collapse, "--sheets", "2"], &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(f.dir().join("c2.json").exists());
}

#[test]
fn torus_double_cover() {
    let f = Files::new();
    kanforge(&["emit", "torus", "--out", &f.path("t.json")], &[]);
    let twist = f.write(
        "cover.json",
        r#"{"group": {"kind": "finite", "name": "Z/2"}, "labels": {"a": "t", "b": "e", "c": "t"}}"#,
    );
    let o = kanforge(&["bundle", "check", &f.path("t.json"), &twist], &[]);
    let out = stdout(&o);
    assert!(out.contains("total cells: 2 6 4\n"), "{out}");
    assert!(out.contains("components: 1\n"));
    assert!(out.ends_with("OK\n"));
    let bad = f.write(
        "bad.json",
        r#"{"group": {"kind": "finite", "name": "Z/2"}, "labels": {"a": "t", "b": "t", "c": "t"}}"#,
    );
    let o = kanforge(&["bundle", "check", &f.path("t.json"), &bad], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cocycle"), "{}", stderr(&o));
}

#[test]
fn fibrant_stage_keeps_vertices() {
    let f = Files::new();
    let o = kanforge(
        &["fibrant", &f.path("circle.json"), "--max-dim", "2", "--stages", "1", "--out", &f.path("fib.json")],
        &[],
    );
    let out = stdout(&o);
    assert!(out.contains("vertices preserved: yes\n"), "{out}");
    assert!(out.contains("stage 1: attached 3\n"));
    let o = kanforge(&["homology", &f.path("fib.json"), "--max-dim", "1"], &[]);
    assert_eq!(stdout(&o), "H0=Z\nH1=Z\nOK\n");
}

#[test]
fn smooth_checks_pass() {
    for which in ["mu", "F", "r", "psi2", "tame", "extend"] {
        for eps in ["0.2", "0.05"] {
            let o = kanforge(&["smooth", which, "--eps", eps, "--grid", "60"], &[]);
            let out = stdout(&o);
            assert_eq!(o.status.code(), Some(0), "{which} {eps}: {out}");
            assert!(out.ends_with("OK\n") && !out.contains("FAIL"));
        }
    }
    let o = kanforge(&["smooth", "psi2", "--eps", "0.6"], &[]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let f = Files::new();
    kanforge(&["emit", "wbar", "z3", "3", "--out", &f.path("bz3.json")], &[]);
    let runs = |args: &[&str]| -> Vec<String> {
        ["1", "2", "8"]
            .iter()
            .map(|n| stdout(&kanforge(args, &[("RAYON_NUM_THREADS", n)])))
            .collect()
    };
    let files: Vec<PathBuf> = vec![f.dir().join("bz3.json"), f.dir().join("circle.json")];
    for file in &files {
        let file = file.to_str().unwrap();
        for args in [
            vec!["kan", file, "--max-dim", "2"],
            vec!["homology", file, "--coeff", "z3"],
            vec!["pi1", file],
        ] {
            let outs = runs(&args);
            assert!(outs.windows(2).all(|w| w[0] == w[1]), "{args:?}");
        }
    }
    let outs = runs(&["smooth", "psi2", "--grid", "80"]);
    assert!(outs.windows(2).all(|w| w[0] == w[1]));
}
