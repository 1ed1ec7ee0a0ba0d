from localgraphs.cli import main
from localgraphs.graphs import MarkAlphabets, read_graph
from localgraphs.measures import empirical_distribution, write_measure


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_sample_is_deterministic_per_seed(capsys):
    code1, out1, _ = run(capsys, "sample", "--degrees", "1,1,2,2", "--seed", "7")
    code2, out2, _ = run(capsys, "sample", "--degrees", "1,1,2,2", "--seed", "7")
    code3, out3, _ = run(capsys, "sample", "--degrees", "1,1,2,2", "--seed", "8")
    assert code1 == code2 == code3 == 0
    assert out1 == out2
    assert out1.startswith("graph ")
    # a different seed is allowed to differ and usually does
    g = read_graph(out3)
    assert tuple(g.degree(v) for v in range(4)) == (1, 1, 2, 2)


def test_sample_marked_output_parses(capsys):
    code, out, _ = run(
        capsys,
        "sample", "--degrees", "1,1", "--seed", "3",
        "--theta", "s,t", "--xi", "a,b", "--u", "s:1,t:1", "--m", "a.b:1",
    )
    assert code == 0
    g = read_graph(out, MarkAlphabets(("s", "t"), ("a", "b")))
    assert sorted(g.tau) == ["s", "t"]
    assert sorted(g.xi.values()) == ["a", "b"]


def test_sample_partial_mark_flags_fail(capsys):
    code, _, err = run(
        capsys, "sample", "--degrees", "1,1", "--seed", "1", "--theta", "s",
    )
    assert code == 1
    assert "together" in err


def test_sample_nongraphical_exits_one(capsys):
    code, _, err = run(capsys, "sample", "--degrees", "3,1", "--seed", "1")
    assert code == 1
    assert err


def test_enumerate_count(capsys):
    code, out, _ = run(capsys, "enumerate", "--degrees", "1,1,1,1")
    assert code == 0
    assert out.strip() == "count 3"


def test_enumerate_members_streams_them(capsys):
    code, out, _ = run(capsys, "enumerate", "--degrees", "1,1,1,1", "--members")
    assert code == 0
    assert out.count("graph ") == 3
    assert out.strip().endswith("count 3")


def test_unknown_flag_exits_one(capsys):
    code, _, err = run(capsys, "enumerate", "--degrees", "1,1", "--bogus")
    assert code == 1
    assert "bogus" in err


def test_unknown_subcommand_exits_one(capsys):
    code, _, err = run(capsys, "frobnicate")
    assert code == 1


def test_distance_between_measure_files(tmp_path, capsys):
    from localgraphs.graphs import build_graph

    ab = MarkAlphabets(("s",), ("a",))
    g1 = build_graph(2, {(0, 1): ("a", "a")}, ("s", "s"), ab)
    g2 = build_graph(2, {}, ("s", "s"), ab)
    f1 = tmp_path / "m1.txt"
    f2 = tmp_path / "m2.txt"
    f1.write_text(write_measure(empirical_distribution(g1)))
    f2.write_text(write_measure(empirical_distribution(g2)))
    code, out, _ = run(capsys, "distance", str(f1), str(f2))
    assert code == 0
    assert out.strip() == "1/2"
    code0, out0, _ = run(capsys, "distance", str(f1), str(f1))
    assert code0 == 0 and out0.strip() == "0/1"


def test_distance_missing_file_exits_one(tmp_path, capsys):
    code, _, err = run(capsys, "distance", str(tmp_path / "no.txt"), str(tmp_path / "no.txt"))
    assert code == 1


def test_transport_round_trip(tmp_path, capsys):
    mat = tmp_path / "A.txt"
    tgt = tmp_path / "beta.txt"
    mat.write_text("dmat 1 0 3\n2 4 2\n")
    tgt.write_text("beta 3\n2 2 2\n")
    out_path = tmp_path / "out.txt"
    code, out, _ = run(
        capsys, "transport", "--matrix", str(mat), "--targets", str(tgt),
        "--out", str(out_path),
    )
    assert code == 0
    assert "changed_columns=1" in out
    assert out_path.read_text().splitlines()[0] == "dmat 1 0 3"


def test_transport_infeasible_exits_two(tmp_path, capsys):
    mat = tmp_path / "A.txt"
    tgt = tmp_path / "beta.txt"
    mat.write_text("dmat 0 1 2\n1 1\n1 1\n")
    tgt.write_text("beta 2\n3 3\n")
    code, _, err = run(
        capsys, "transport", "--matrix", str(mat), "--targets", str(tgt)
    )
    assert code == 2
    assert err


def test_surgery_end_to_end(tmp_path, capsys):
    from localgraphs.graphs import build_graph, write_graph

    ab = MarkAlphabets(("s",), ("a",))
    n = 40
    g = build_graph(
        n, {(i, i + 1): ("a", "a") for i in range(n - 1)}, ("s",) * n, ab
    )
    gpath = tmp_path / "g.txt"
    gpath.write_text(write_graph(g))
    degs = [g.degree(v) for v in range(n)]
    degrees = ",".join(str(d) for d in degs)
    out_path = tmp_path / "rebuilt.txt"
    code, out, _ = run(
        capsys, "surgery", "--graph", str(gpath), "--degrees", degrees,
        "--k", "1", "--seed", "5", "--out", str(out_path),
    )
    assert code == 0
    assert "degree_exact=True" in out
    assert "modified_vertices=0" in out
    rebuilt = read_graph(out_path.read_text(), ab)
    assert [rebuilt.degree(v) for v in range(n)] == degs


def test_cm_sampling_and_alpha(tmp_path, capsys):
    from localgraphs.colored import (
        color_graph,
        colored_degree_sequence_of,
        write_cds,
    )
    from localgraphs.graphs import build_graph

    ab = MarkAlphabets(("s",), ("a",))
    g = build_graph(
        4, {(0, 1): ("a", "a"), (1, 2): ("a", "a"), (2, 3): ("a", "a")},
        ("s",) * 4, ab,
    )
    cm, _ = color_graph(g, 1)
    cds_path = tmp_path / "d.cds"
    cds_path.write_text(write_cds(colored_degree_sequence_of(cm)))
    code, out, _ = run(capsys, "cm", "--cds", str(cds_path), "--seed", "11")
    assert code == 0
    assert out.startswith("edge ")
    code2, out2, _ = run(
        capsys, "cm", "--cds", str(cds_path), "--seed", "11", "--trials", "200",
        "--girth", "3",
    )
    assert code2 == 0
    assert "estimate=" in out2 and "trials=200" in out2


def test_entropy_from_inputs_file(tmp_path, capsys):
    inputs = tmp_path / "rates.txt"
    inputs.write_text(
        "P=2:1\nQ=s:1\nvartheta=s:1\nchi=a:1\nd=a.a:2\n"
        "Sigma=0.0\nSigma.provenance=supplied\nJ1=0.0\nJ1.provenance=supplied\n"
    )
    code, out, _ = run(capsys, "entropy", "--inputs", str(inputs))
    assert code == 0
    assert "H_Q=" in out and "I_dQ=" in out


def test_sample_from_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg.txt"
    cfg.write_text(
        "degrees=1,1\ntheta=s\nxi=a\nvartheta=s:1\nchi=a:1\nseed=2\ntrials=3\n"
    )
    code, out, _ = run(capsys, "sample", "--config", str(cfg))
    assert code == 0
    assert out.count("graph ") == 3
