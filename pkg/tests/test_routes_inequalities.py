def test_cycle_family(client):
    response = client.get("/api/inequalities/family", params={"family": "cycle", "n": 4})
    assert response.status_code == 200, response.text
    data = response.json()
    assert data["graph"]["edges"] == [[1, 2], [1, 4], [2, 3], [3, 4]]
    assert len(data["inequalities"]) == 4
    assert "r12-r14+r23+r34 <= 2" in [i["text"] for i in data["inequalities"]]


def test_hn_family(client):
    response = client.get("/api/inequalities/family", params={"family": "hn", "n": 4})
    assert response.status_code == 200, response.text
    assert response.json()["inequalities"] == [
        {"coeffs": [1, 1, 1, -1, -1, -1], "rhs": 1, "text": "r12+r13+r14-r23-r24-r34 <= 1"}]


def test_unknown_family(client):
    response = client.get("/api/inequalities/family", params={"family": "pentagram", "n": 5})
    assert response.status_code == 404, response.text


def test_family_below_minimum(client):
    response = client.get("/api/inequalities/family", params={"family": "cycle", "n": 2})
    assert response.status_code == 400, response.text
    response = client.get("/api/inequalities/family", params={"family": "cycle", "n": 1})
    assert response.status_code == 422, response.text


def test_table(client):
    response = client.get("/api/inequalities/table")
    assert response.status_code == 200, response.text
    data = response.json()
    assert [row["name"] for row in data] == [f"k5_c{k}" for k in range(1, 10)]
    assert sum(row["class_size"] for row in data) == 232
    assert all(len(row["inequality"]["coeffs"]) == 10 for row in data)
