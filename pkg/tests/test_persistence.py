import pytest

from persistence import SQLiteRunArchive


@pytest.fixture
def archive():
    store = SQLiteRunArchive(":memory:")
    yield store
    store.close()


def report(value):
    return {"status": "success", "result": {"value": value}}


class TestSQLiteRunArchive:
    def test_insert_and_get(self, archive):
        run_id = archive.insert_run("mr", 3, {"seesaw": {"restarts": 2}}, report(1.5), 1.5)
        run = archive.get_run(run_id)
        assert run["command"] == "mr"
        assert run["seed"] == 3
        assert run["config"] == {"seesaw": {"restarts": 2}}
        assert run["report"]["result"]["value"] == 1.5

    def test_missing_run(self, archive):
        assert archive.get_run(42) is None

    def test_search_newest_first(self, archive):
        first = archive.insert_run("mr", 0, {}, report(2.0), 2.0)
        archive.insert_run("nsit", 0, {}, report(0.5), 0.5)
        second = archive.insert_run("mr", 1, {}, report(1.0), 1.0)
        runs = archive.search_runs("mr")
        assert [r["id"] for r in runs] == [second, first]
        assert len(archive.search_runs("mr", limit=1, offset=1)) == 1

    def test_recent_runs(self, archive):
        for value in (1.0, 2.0, 3.0):
            archive.insert_run("disturbance", 0, {}, report(value), value)
        runs = archive.get_recent_runs(limit=2)
        assert [r["value"] for r in runs] == [3.0, 2.0]

    def test_best_value(self, archive):
        archive.insert_run("mr", 0, {}, report(2.0), 2.0)
        archive.insert_run("mr", 1, {}, report(1.25), 1.25)
        archive.insert_run("mr", 1, {}, report(1.75), 1.75)
        assert archive.best_value("mr") == 1.25
        assert archive.best_value("mr", seed=0) == 2.0
        assert archive.best_value("compat") is None

    def test_count(self, archive):
        assert archive.count_runs() == 0
        archive.insert_run("catalog", None, {}, report(None))
        assert archive.count_runs() == 1

    def test_file_backed(self, tmp_path):
        path = str(tmp_path / "runs.db")
        store = SQLiteRunArchive(path)
        store.insert_run("mr", 0, {}, report(1.0), 1.0)
        store.close()
        reopened = SQLiteRunArchive(path)
        assert reopened.count_runs() == 1
        reopened.close()
