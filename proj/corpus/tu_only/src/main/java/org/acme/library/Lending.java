package org.acme.library;

public class Lending {
    private final Catalog catalog;

    public Lending(Catalog catalog) {
        this.catalog = catalog;
    }

    public boolean canBorrow(Member member, String isbn) {
        if (member.isSuspended()) {
            return false;
        }
        return catalog.copiesOf(isbn) > 0 && member.getLoans() < 3;
    }

    public String label(String isbn) {
        return catalog.titleOf(isbn) + " [" + isbn + "]";
    }
}
