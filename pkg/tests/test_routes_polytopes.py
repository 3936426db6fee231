K3 = {"n": 3, "edges": [[1, 2], [2, 3], [1, 3]]}
C4 = {"n": 4, "edges": [[1, 2], [2, 3], [3, 4], [4, 1]]}


def test_list_empty(client):
    response = client.get("/api/polytopes/")
    assert response.status_code == 200, response.text
    assert response.json() == []


def test_list_after_facets(client):
    for body in (C4, K3):
        assert client.post("/api/graphs/facets", json=body).status_code == 200
    response = client.get("/api/polytopes/")
    assert response.status_code == 200, response.text
    data = response.json()
    assert [row["graph_key"] for row in data] == ["3:1-2,1-3,2-3", "4:1-2,1-4,2-3,3-4"]
    assert data[0]["vertex_count"] == 5
    assert data[0]["facet_count"] == 6
    assert "created_at" in data[0]


def test_list_paging(client):
    response = client.get("/api/polytopes/", params={"skip": 1, "limit": 1})
    assert response.status_code == 200, response.text
    assert [row["graph_key"] for row in response.json()] == ["4:1-2,1-4,2-3,3-4"]
    assert client.get("/api/polytopes/", params={"limit": 0}).status_code == 422


def test_delete_record(client):
    record_id = client.get("/api/polytopes/").json()[0]["id"]
    response = client.delete(f"/api/polytopes/{record_id}")
    assert response.status_code == 204, response.text
    assert [row["graph_key"] for row in client.get("/api/polytopes/").json()] == ["4:1-2,1-4,2-3,3-4"]


def test_delete_record_not_found(client):
    response = client.delete("/api/polytopes/999")
    assert response.status_code == 404, response.text
    assert response.json()["detail"] == "Not found"
