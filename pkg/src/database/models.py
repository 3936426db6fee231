from sqlalchemy import Column, DateTime, func, Integer, String, Text
from sqlalchemy.orm import declarative_base

Base = declarative_base()


class PolytopeRecord(Base):
    __tablename__ = "polytopes"

    id = Column(Integer, primary_key=True, index=True)
    graph_key = Column(String(1024), index=True, unique=True, nullable=False)
    n = Column(Integer, nullable=False)
    m = Column(Integer, nullable=False)
    vertex_count = Column(Integer, nullable=False)
    facet_count = Column(Integer, nullable=True)
    vertices = Column(Text, nullable=False)
    facets = Column(Text, nullable=True)
    created_at = Column(DateTime, default=func.now())
