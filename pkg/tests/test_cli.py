import pytest

from conftest import TOY_DEMOGRAPHICS, TOY_TAGGINGS
from quadrec.cli import main


@pytest.fixture
def toy_args(tmp_path):
    return ["--taggings", str(TOY_TAGGINGS), "--demographics", str(TOY_DEMOGRAPHICS),
            "--concepts", str(tmp_path / "concepts.tsv")]


@pytest.fixture
def mined(toy_args):
    assert main(["mine", *toy_args]) == 0
    return toy_args


def rec(capsys, args, *extra):
    code = main(["recommend", *args, *extra])
    out = capsys.readouterr()
    return code, [line.split("\t")[0] for line in out.out.splitlines()], out.err


def test_mine_toy(tmp_path, toy_args, capsys):
    assert main(["mine", *toy_args]) == 0
    assert capsys.readouterr().out.strip() == "concepts=3"
    first = (tmp_path / "concepts.tsv").read_bytes()
    assert main(["mine", *toy_args]) == 0
    assert (tmp_path / "concepts.tsv").read_bytes() == first


def test_mine_workers_identical(tmp_path, toy_args):
    main(["mine", *toy_args])
    one = (tmp_path / "concepts.tsv").read_bytes()
    main(["mine", *toy_args, "--workers", "4"])
    assert (tmp_path / "concepts.tsv").read_bytes() == one


def test_mine_empty_taggings(tmp_path, capsys):
    empty = tmp_path / "t.tsv"
    empty.write_text("# nothing\n")
    code = main(["mine", "--taggings", str(empty), "--demographics", str(TOY_DEMOGRAPHICS),
                 "--concepts", str(tmp_path / "c.tsv")])
    assert code == 2
    assert "EmptyInput" in capsys.readouterr().err


def test_recommend_tags(mined, capsys):
    code, items, _ = rec(capsys, mined, "--user", "rossy", "--resource", "Rear Window", "--which", "tags")
    assert code == 0
    assert set(items) == {"classic", "oldmovie", "quotes"}


def test_recommend_users(mined, capsys):
    code, items, _ = rec(capsys, mined, "--user", "csmdavis", "--which", "users")
    assert code == 0 and set(items) == {"mulder", "scully"}


def test_recommend_cold_start(mined, capsys):
    code, items, _ = rec(capsys, mined, "--user", "reyes", "-k", "3")
    assert code == 0
    assert set(items) == {"Rear Window", "M.A.S.H", "Star Wars"}


def test_recommend_top1(mined, capsys):
    code, items, _ = rec(capsys, mined, "--user", "reyes", "-k", "1")
    assert code == 0 and len(items) == 1


def test_recommend_unknown_user(mined, capsys):
    code, items, err = rec(capsys, mined, "--user", "nobody")
    assert code == 2 and items == []
    assert "UnknownUser" in err


def test_recommend_tags_need_resource(mined, capsys):
    code, _, err = rec(capsys, mined, "--user", "rossy", "--which", "tags")
    assert code == 2 and "MissingResource" in err


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["mine", "--minsupp_u", "0"],
        ["mine", "--mode", "fuzzy"],
        ["mine", "--bogus", "1"],
        ["evaluate", "--fraction", "1.5"],
        ["mine", "--minsupp"],
    ],
)
def test_usage_errors(argv, toy_args, capsys):
    with_paths = argv[:1] + toy_args + argv[1:] if argv and argv[0] in ("mine", "evaluate") else argv
    try:
        code = main(with_paths)
    except SystemExit as exc:
        code = exc.code
    assert code == 1


def test_missing_path_is_usage_error(capsys):
    assert main(["mine"]) == 1


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(
        f"# toy run\ntaggings={TOY_TAGGINGS}\ndemographics={TOY_DEMOGRAPHICS}\n"
        f"concepts={tmp_path / 'c.tsv'}\nminsupp_u=4\n"
    )
    assert main(["mine", "--config", str(cfg)]) == 0
    assert capsys.readouterr().out.strip() == "concepts=0"
    assert main(["mine", "--config", str(cfg), "--minsupp_u", "2"]) == 0
    assert capsys.readouterr().out.strip() == "concepts=3"


def test_bad_config_key(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("colour=blue\n")
    assert main(["mine", "--config", str(cfg)]) == 1


def test_evaluate_records(tmp_path, toy_args, capsys):
    report, table = tmp_path / "report.txt", tmp_path / "table.tsv"
    args = ["evaluate", *toy_args, "--report", str(report), "--table", str(table), "--fraction", "0.34"]
    assert main(args) == 0
    first = report.read_bytes()
    lines = first.decode().splitlines()
    assert lines[0].startswith("# thresholds=")
    assert [l.split("\t")[0] for l in lines[1:]] == [f"k={k}" for k in range(5, 11)]
    assert table.read_text().splitlines()[0] == "k\tmean_precision"
    assert main(args) == 0
    assert report.read_bytes() == first
