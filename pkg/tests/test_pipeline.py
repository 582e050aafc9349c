import pytest

from mair.pipeline import Pipeline, PipelineError, Stage, load_pipeline


def copy_runner(base_dir):
    """Toy stage command: ``copy SRC DST [SUFFIX]``."""

    def run(argv):
        assert argv[0] == "copy"
        src, dst = base_dir / argv[1], base_dir / argv[2]
        suffix = argv[3] if len(argv) > 3 else ""
        dst.write_text(src.read_text() + suffix, encoding="utf-8")

    return run


@pytest.fixture
def chain(tmp_path):
    (tmp_path / "input.txt").write_text("seed", encoding="utf-8")
    stages = [
        Stage("first", deps=("input.txt",), outs=("mid.txt",), command="copy input.txt mid.txt -A"),
        Stage("second", deps=("mid.txt",), outs=("final.txt",), command="copy mid.txt final.txt -B"),
    ]
    return Pipeline(stages, base_dir=tmp_path, runner=copy_runner(tmp_path)), tmp_path


class TestCaching:
    def test_clean_run_executes_all(self, chain):
        pipe, _ = chain
        report = pipe.run()
        assert report.executed == ["first", "second"]
        assert report.skipped == []

    def test_second_run_skips_all(self, chain):
        pipe, _ = chain
        pipe.run()
        report = pipe.run()
        assert report.executed == []
        assert report.skipped == ["first", "second"]

    def test_touched_source_reruns_downstream(self, chain):
        pipe, base = chain
        pipe.run()
        (base / "input.txt").write_text("seed2", encoding="utf-8")
        report = pipe.run()
        assert report.executed == ["first", "second"]

    def test_tampered_intermediate_is_repaired_then_downstream_skips(self, chain):
        # content addressing: the regenerated intermediate is identical, so
        # the consumer stays fresh
        pipe, base = chain
        pipe.run()
        (base / "mid.txt").write_text("tampered", encoding="utf-8")
        report = pipe.run()
        assert report.executed == ["first"]
        assert report.skipped == ["second"]
        assert (base / "mid.txt").read_text() == "seed-A"

    def test_changed_command_invalidates(self, chain):
        pipe, base = chain
        pipe.run()
        stages = [
            pipe.stages[0],
            Stage("second", deps=("mid.txt",), outs=("final.txt",), command="copy mid.txt final.txt -C"),
        ]
        pipe2 = Pipeline(stages, base_dir=base, runner=copy_runner(base))
        report = pipe2.run()
        assert report.executed == ["second"]
        assert report.skipped == ["first"]

    def test_deleted_output_reruns(self, chain):
        pipe, base = chain
        pipe.run()
        (base / "final.txt").unlink()
        report = pipe.run()
        assert report.executed == ["second"]
        assert report.skipped == ["first"]

    def test_force_reruns_everything(self, chain):
        pipe, _ = chain
        pipe.run()
        report = pipe.run(force=True)
        assert report.executed == ["first", "second"]

    def test_cache_soundness_outputs_identical(self, chain):
        pipe, base = chain
        pipe.run()
        cached = (base / "final.txt").read_text()
        report = pipe.run(force=True)
        assert report.executed == ["first", "second"]
        assert (base / "final.txt").read_text() == cached


class TestDag:
    def test_cycle_detected_and_named(self, tmp_path):
        stages = [
            Stage("a", deps=("b.out",), outs=("a.out",), command="copy b.out a.out"),
            Stage("b", deps=("a.out",), outs=("b.out",), command="copy a.out b.out"),
        ]
        with pytest.raises(PipelineError, match="cycle"):
            Pipeline(stages, base_dir=tmp_path, runner=copy_runner(tmp_path))

    def test_missing_input_names_stage_and_path(self, tmp_path):
        stages = [Stage("solo", deps=("absent.txt",), outs=("x.txt",), command="copy absent.txt x.txt")]
        pipe = Pipeline(stages, base_dir=tmp_path, runner=copy_runner(tmp_path))
        with pytest.raises(PipelineError, match="solo.*absent.txt"):
            pipe.run()

    def test_target_runs_only_upstream(self, tmp_path):
        (tmp_path / "in.txt").write_text("x", encoding="utf-8")
        stages = [
            Stage("a", deps=("in.txt",), outs=("a.out",), command="copy in.txt a.out"),
            Stage("b", deps=("a.out",), outs=("b.out",), command="copy a.out b.out"),
            Stage("c", deps=("in.txt",), outs=("c.out",), command="copy in.txt c.out"),
        ]
        pipe = Pipeline(stages, base_dir=tmp_path, runner=copy_runner(tmp_path))
        report = pipe.run(targets=["b"])
        assert report.executed == ["a", "b"]
        assert not (tmp_path / "c.out").exists()

    def test_unknown_target_rejected(self, tmp_path):
        pipe = Pipeline([], base_dir=tmp_path, runner=copy_runner(tmp_path))
        with pytest.raises(PipelineError, match="unknown stage"):
            pipe.run(targets=["ghost"])

    def test_missing_declared_output_fails(self, tmp_path):
        (tmp_path / "in.txt").write_text("x", encoding="utf-8")
        stages = [Stage("a", deps=("in.txt",), outs=("never.txt",), command="copy in.txt other.txt")]
        pipe = Pipeline(stages, base_dir=tmp_path, runner=copy_runner(tmp_path))
        with pytest.raises(PipelineError, match="did not produce"):
            pipe.run()


class TestStatus:
    def test_states(self, chain):
        pipe, base = chain
        assert pipe.status() == {"first": "stale", "second": "stale"}
        pipe.run()
        assert pipe.status() == {"first": "fresh", "second": "fresh"}

    def test_missing_source_flagged(self, tmp_path):
        stages = [Stage("a", deps=("gone.txt",), outs=("a.out",), command="copy gone.txt a.out")]
        pipe = Pipeline(stages, base_dir=tmp_path, runner=copy_runner(tmp_path))
        assert pipe.status() == {"a": "missing-input"}


class TestLoadPipeline:
    def test_parse_file(self, tmp_path):
        text = (
            "# demo\n"
            "stage one\n"
            "dep in.txt\n"
            "out mid.txt\n"
            "cmd copy in.txt mid.txt\n"
            "\n"
            "stage two\n"
            "dep mid.txt\n"
            "out end.txt\n"
            "cmd copy mid.txt end.txt\n"
        )
        path = tmp_path / "pipeline.mair"
        path.write_text(text, encoding="utf-8")
        stages = load_pipeline(path)
        assert [s.name for s in stages] == ["one", "two"]
        assert stages[0].deps == ("in.txt",)
        assert stages[1].command == "copy mid.txt end.txt"

    def test_stage_without_cmd_rejected(self, tmp_path):
        path = tmp_path / "pipeline.mair"
        path.write_text("stage one\ndep a\nout b\n", encoding="utf-8")
        with pytest.raises(PipelineError, match="no cmd"):
            load_pipeline(path)

    def test_duplicate_stage_names_rejected(self, tmp_path):
        path = tmp_path / "pipeline.mair"
        path.write_text("stage s\ncmd copy a b\nstage s\ncmd copy a b\n", encoding="utf-8")
        with pytest.raises(PipelineError, match="duplicate"):
            load_pipeline(path)

    def test_unknown_directive_rejected(self, tmp_path):
        path = tmp_path / "pipeline.mair"
        path.write_text("stage s\nwat x\ncmd copy a b\n", encoding="utf-8")
        with pytest.raises(PipelineError, match="unknown directive"):
            load_pipeline(path)
