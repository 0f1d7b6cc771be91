package com.example.shop;

public class OrderService {
    private final Inventory inventory;
    private final PriceService prices;

    public OrderService(Inventory inventory, PriceService prices) {
        this.inventory = inventory;
        this.prices = prices;
    }

    public int quote(String sku, int quantity, Customer customer) {
        if (inventory.isDiscontinued(sku)) {
            throw new IllegalStateException("discontinued: " + sku);
        }
        int total = prices.priceOf(sku) * quantity;
        if (customer.isPremium()) {
            total = total - prices.discountFor(customer.getName());
        }
        return total;
    }

    public boolean canShip(String sku, int quantity) {
        return inventory.stockOf(sku) >= quantity;
    }

    public String describe(String sku) {
        return sku + "@" + inventory.warehouseOf(sku) + " " + prices.currency();
    }
}
