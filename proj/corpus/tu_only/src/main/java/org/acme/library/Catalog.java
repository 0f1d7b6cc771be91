package org.acme.library;

public interface Catalog {
    int copiesOf(String isbn);

    String titleOf(String isbn);

    boolean isReference(String isbn);
}
