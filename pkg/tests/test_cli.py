import json

from wktoolkit import cli


def _run(capsys, argv):
    code = cli.run(argv)
    out = capsys.readouterr().out
    return code, out


def test_factor_lengths_example(capsys):
    code, out = _run(capsys, ["factor", "lengths", "--gens", "2,3", "--element", "6"])
    assert code == 0
    payload = json.loads(out)
    assert payload["lengths"] == [2, 3]


def test_decide_example(capsys):
    code, out = _run(
        capsys, ["decide", "weakly-krull", "--domain", "z", "--monoid", "numerical:2,3"]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["answer"] is True
    assert payload["certificate"]


def test_numon_info_example(capsys):
    code, out = _run(capsys, ["numon", "info", "--gens", "1"])
    assert code == 0
    payload = json.loads(out)
    assert payload["frobenius"] == -1
    assert payload["gaps"] == []


def test_all_subcommands_byte_deterministic(capsys):
    invocations = [
        ["numon", "info", "--gens", "4,6,9"],
        ["numon", "apery", "--gens", "3,5", "--element", "3"],
        ["affine", "info", "--gens", "2,3;3,5"],
        ["factor", "factorizations", "--gens", "2,3", "--element", "12"],
        ["factor", "lengths", "--gens", "2,3;3,5", "--element", "6,15"],
        ["factor", "delta", "--gens", "3,5", "--bound", "40"],
        ["factor", "uk", "--gens", "2,3", "--k", "2", "--bound", "30"],
        ["blocks", "atoms", "--group", "4"],
        ["blocks", "davenport", "--group", "2,2"],
        ["blocks", "lengths", "--group", "3", "--element", "1,1,1,2,2,2"],
        ["blocks", "delta", "--group", "3", "--cap", "8"],
        ["blocks", "uk", "--group", "3", "--k", "2", "--cap", "8"],
        ["classgroup", "numerical", "--p", "2", "--gens", "2,5"],
        ["classgroup", "direct-sum", "--gens", "2,3;1", "--domain", "q"],
        ["decide", "wfd", "--domain", "z", "--monoid", "numerical:2,3"],
        ["decide", "generalized-krull", "--domain", "fp:3", "--monoid", "numerical:1"],
        ["decide", "weakly-krull", "--domain", "fp:2", "--monoid", "custom:group=2^inf;weakly_krull=true;umt=true"],
        ["hilbertian", "find", "--p", "2", "--prefix", "1,1", "--max-degree", "4"],
        ["hilbertian", "irreducible", "--p", "2", "--prefix", "1,1,1"],
        ["groups", "type000", "--desc", "2^inf"],
        ["groups", "type000-except", "--desc", "2^inf", "--p", "2"],
        ["groups", "iprime", "--desc", "2^inf,sym^3"],
        ["groups", "snf", "--matrix", "2,0;0,3"],
    ]
    for argv in invocations:
        code1, out1 = _run(capsys, argv)
        code2, out2 = _run(capsys, argv)
        assert code1 == code2
        assert out1 == out2, argv
        assert code1 == 0, argv
        json.loads(out1)  # a single JSON document


def test_capped_results_carry_flags(capsys):
    code, out = _run(capsys, ["factor", "delta", "--gens", "3,5", "--bound", "40"])
    payload = json.loads(out)
    assert payload["complete"] is False
    assert payload["cap"] == 40


def test_exit_codes(capsys):
    code, out = _run(capsys, ["numon", "info", "--gens", "4,6"])
    assert code == 2  # gcd not one
    code, out = _run(capsys, ["hilbertian", "find", "--p", "2", "--prefix", "1,0", "--max-degree", "2"])
    assert code == 4  # not found
    code, out = _run(capsys, ["blocks", "atoms", "--group", "65"])
    assert code == 3  # group cap
    code, _ = _run(capsys, ["numon", "apery", "--gens", "2,3", "--element", "1"])
    assert code == 2  # not in monoid
    assert cli.run(["bogus"]) == 2
    assert cli.run([]) == 2


def test_pretty_flag(capsys):
    code, out = _run(capsys, ["numon", "info", "--gens", "2,3", "--pretty"])
    assert code == 0
    assert "\n  " in out
    assert json.loads(out)["atoms"] == [2, 3]


def test_cache_round_trip(tmp_path, capsys):
    argv = ["factor", "lengths", "--gens", "2,3", "--element", "6", "--cache-dir", str(tmp_path)]
    code1, out1 = _run(capsys, argv)
    cache_file = tmp_path / cli.CACHE_FILE
    assert cache_file.exists()
    record = json.loads(cache_file.read_text().strip())
    assert record["payload"]["lengths"] == [2, 3]
    code2, out2 = _run(capsys, argv)  # served from cache
    assert (code1, out1) == (code2, out2)
    # cache must not change payloads versus a cold run
    code3, out3 = _run(capsys, argv[:-2] + ["--no-cache"])
    assert out3 == out1


def test_cache_env_variable(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv(cli.CACHE_ENV, str(tmp_path))
    _run(capsys, ["numon", "info", "--gens", "2,3"])
    assert (tmp_path / cli.CACHE_FILE).exists()


def test_cache_flag_wins_over_env(tmp_path, capsys, monkeypatch):
    env_dir = tmp_path / "env"
    flag_dir = tmp_path / "flag"
    env_dir.mkdir()
    monkeypatch.setenv(cli.CACHE_ENV, str(env_dir))
    _run(capsys, ["numon", "info", "--gens", "2,3", "--cache-dir", str(flag_dir)])
    assert (flag_dir / cli.CACHE_FILE).exists()
    assert not (env_dir / cli.CACHE_FILE).exists()


def test_cache_corrupt_line_skipped(tmp_path, capsys):
    argv = ["numon", "info", "--gens", "2,3", "--cache-dir", str(tmp_path)]
    code1, out1 = _run(capsys, argv)
    cache_file = tmp_path / cli.CACHE_FILE
    text = cache_file.read_text()
    cache_file.write_text("{corrupt json\n" + text)
    code2, out2 = _run(capsys, argv)
    assert out2 == out1 and code2 == code1


def test_cache_unwritable_directory_warns_but_computes(capsys, monkeypatch):
    code, out = _run(
        capsys,
        ["numon", "info", "--gens", "2,3", "--cache-dir", "/proc/definitely-not-writable/x"],
    )
    assert code == 0
    assert json.loads(out)["atoms"] == [2, 3]


def test_cache_key_separates_operations():
    k1 = cli.request_key("numon", {"gens": "2,3"})
    k2 = cli.request_key("factor", {"gens": "2,3"})
    k3 = cli.request_key("numon", {"gens": "2,5"})
    assert len({k1, k2, k3}) == 3


def test_char_override(capsys):
    code, out = _run(
        capsys,
        [
            "decide", "weakly-krull",
            "--domain", "custom:weakly_krull=true;umt=true",
            "--char", "0",
            "--monoid", "custom:group=2^inf;weakly_krull=true;umt=true",
        ],
    )
    assert code == 0
    assert json.loads(out)["answer"] is False  # char 0 kills the 2-divisible group
    code, out = _run(
        capsys,
        [
            "decide", "weakly-krull",
            "--domain", "custom:weakly_krull=true;umt=true",
            "--char", "2",
            "--monoid", "custom:group=2^inf;weakly_krull=true;umt=true",
        ],
    )
    assert json.loads(out)["answer"] is True
    code, _ = _run(capsys, ["decide", "weakly-krull", "--domain", "z", "--char", "2", "--monoid", "numerical:2,3"])
    assert code == 2  # contradicts the integers' characteristic


def test_trivial_group_on_cli(capsys):
    code, out = _run(capsys, ["blocks", "davenport", "--group", "1"])
    assert code == 0
    assert json.loads(out)["davenport_constant"] == 0


def test_missing_element_is_input_error(capsys):
    code, _ = _run(capsys, ["factor", "factorizations", "--gens", "2,3"])
    assert code == 2


def test_block_element_with_rank_two_group(capsys):
    code, out = _run(
        capsys,
        ["blocks", "lengths", "--group", "2,2", "--element", "1:0,1:0,0:1,0:1"],
    )
    assert code == 0
    assert json.loads(out)["lengths"] == [2]
