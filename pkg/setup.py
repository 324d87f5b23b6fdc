from setuptools import find_packages, setup


setup(
    name="hedgehog_ramsey",
    version="0.0.1",
    description="Constructions, embeddings and exact checks for Ramsey numbers of 3-uniform hedgehogs",
    packages=find_packages(exclude=["tests"]),
    python_requires=">=3.10",
    install_requires=["torch >= 2.2", "fire", "pyarrow", "networkx >= 3.0"],
    entry_points={"console_scripts": ["hedgehog-ramsey = hedgehog_ramsey.cli:main_entry"]},
    license="Apache License 2.0",
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: Apache Software License",
    ],
)
